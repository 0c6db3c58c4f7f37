#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusegraph {

// Pauli axis of a non-identity signed Pauli operator.
enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct SignedPauli {
  Axis axis;
  bool negative = false;

  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
  friend auto operator<=>(const SignedPauli&, const SignedPauli&) = default;
};

// Single-qubit Clifford operator modulo global phase, represented by the
// conjugation images of X and Z. The images are always signed Paulis, they
// anticommute, and there are exactly 24 distinct values.
class Clifford {
 public:
  constexpr Clifford() : img_x_{Axis::X, false}, img_z_{Axis::Z, false} {}
  constexpr Clifford(SignedPauli img_x, SignedPauli img_z) : img_x_(img_x), img_z_(img_z) {}

  static constexpr Clifford identity() { return Clifford(); }
  // Quarter turns about the Bloch x and z axes, and the Hadamard.
  static constexpr Clifford rx() { return Clifford({Axis::X, false}, {Axis::Y, true}); }
  static constexpr Clifford rx_dag() { return Clifford({Axis::X, false}, {Axis::Y, false}); }
  static constexpr Clifford rz() { return Clifford({Axis::Y, false}, {Axis::Z, false}); }
  static constexpr Clifford rz_dag() { return Clifford({Axis::Y, true}, {Axis::Z, false}); }
  static constexpr Clifford hadamard() { return Clifford({Axis::Z, false}, {Axis::X, false}); }

  SignedPauli image_of_x() const { return img_x_; }
  SignedPauli image_of_z() const { return img_z_; }

  SignedPauli image_of_y() const {
    // Y = i X Z, so the image is i * img(X) * img(Z).
    return mul_i_pow(1, img_x_, img_z_);
  }

  SignedPauli apply(SignedPauli p) const {
    SignedPauli out;
    switch (p.axis) {
      case Axis::X: out = img_x_; break;
      case Axis::Y: out = image_of_y(); break;
      case Axis::Z: out = img_z_; break;
      default: throw std::logic_error("bad axis");
    }
    out.negative ^= p.negative;
    return out;
  }

  bool is_identity() const { return *this == identity(); }

  // Composition: (a * b) acts as "apply b first, then a".
  friend Clifford operator*(const Clifford& a, const Clifford& b) {
    return Clifford(a.apply(b.img_x_), a.apply(b.img_z_));
  }

  friend bool operator==(const Clifford&, const Clifford&) = default;
  friend auto operator<=>(const Clifford&, const Clifford&) = default;

  // Shortest generator word, leftmost gate applied last, e.g. "RZ*RXdg".
  std::string word() const;

 private:
  // i^extra_phase * a * b for anticommuting non-identity Paulis a, b.
  static SignedPauli mul_i_pow(int i_pow, SignedPauli a, SignedPauli b) {
    if (a.axis == b.axis) throw std::logic_error("pauli product would be identity");
    static constexpr int kEps[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    int ia = static_cast<int>(a.axis), ib = static_cast<int>(b.axis);
    Axis out_axis = static_cast<Axis>(3 - ia - ib);
    // X*Y = iZ and cyclic, so the product carries a factor i^(+/-1).
    int phase = i_pow + kEps[ia][ib];
    if (a.negative) phase += 2;
    if (b.negative) phase += 2;
    phase = ((phase % 4) + 4) % 4;
    if (phase % 2 != 0) throw std::logic_error("pauli product has imaginary sign");
    return SignedPauli{out_axis, phase == 2};
  }

  SignedPauli img_x_;
  SignedPauli img_z_;
};

// The full 24-element group together with shortest words over the generators.
inline const std::map<Clifford, std::string>& clifford_word_table() {
  static const std::map<Clifford, std::string> table = [] {
    const std::array<std::pair<Clifford, std::string>, 5> gens = {{
        {Clifford::hadamard(), "H"},
        {Clifford::rx(), "RX"},
        {Clifford::rx_dag(), "RXdg"},
        {Clifford::rz(), "RZ"},
        {Clifford::rz_dag(), "RZdg"},
    }};
    std::map<Clifford, std::string> words;
    words.emplace(Clifford::identity(), "I");
    std::vector<Clifford> frontier = {Clifford::identity()};
    while (!frontier.empty()) {
      std::vector<Clifford> next;
      for (const Clifford& c : frontier) {
        for (const auto& [g, name] : gens) {
          Clifford composed = g * c;
          if (words.count(composed)) continue;
          const std::string& base = words.at(c);
          words.emplace(composed, base == "I" ? name : name + "*" + base);
          next.push_back(composed);
        }
      }
      frontier = std::move(next);
    }
    return words;
  }();
  return table;
}

inline std::string Clifford::word() const { return clifford_word_table().at(*this); }

}  // namespace fusegraph
