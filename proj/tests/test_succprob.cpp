#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "fusegraph/families.hpp"
#include "fusegraph/optimizer.hpp"
#include "fusegraph/succprob.hpp"

using namespace fusegraph;

namespace {

FusionNetwork bare_network(int nodes, std::initializer_list<std::pair<int, int>> links) {
  FusionNetwork net;
  for (int i = 0; i < nodes; ++i) {
    NetworkNode n;
    n.name = std::to_string(i);
    n.group = Vertex(static_cast<std::uint64_t>(i));
    n.is_seed = true;
    net.nodes.push_back(std::move(n));
    net.groups[Vertex(static_cast<std::uint64_t>(i))] = {i};
  }
  for (auto [a, b] : links) {
    NetworkLink l;
    l.a = a;
    l.b = b;
    net.links.push_back(l);
  }
  return net;
}

FusionSchedule sequential_schedule(const FusionNetwork& net, double p, Measure m) {
  FusionSchedule s;
  s.p_succ = p;
  s.measure = m;
  ContractionState state(net, p, m);
  for (std::size_t l = 0; l < net.links.size(); ++l) {
    state.contract(l);
    s.rounds.push_back({static_cast<int>(l)});
  }
  s.q_value = state.total_weight();
  return s;
}

}  // namespace

TEST_CASE("combining two base states at one half") {
  OverheadPoly out = combine_link(OverheadPoly::base(), OverheadPoly::base(), 0.5);
  REQUIRE(out.coeff.size() == 3);
  CHECK(out.coeff[0] == doctest::Approx(-1.0));
  CHECK(out.coeff[1] == doctest::Approx(0.0));
  CHECK(out.coeff[2] == doctest::Approx(2.0));
  CHECK(out.degree() == 2);
}

TEST_CASE("unit probability combine is a plain convolution") {
  OverheadPoly a = combine_link(OverheadPoly::base(), OverheadPoly::base(), 1.0);
  REQUIRE(a.coeff.size() == 3);
  CHECK(a.coeff[0] == doctest::Approx(0.0));
  CHECK(a.coeff[2] == doctest::Approx(1.0));
  // Degrees add under convolution.
  OverheadPoly b = combine_link(a, combine_link(a, OverheadPoly::base(), 0.5), 0.5);
  CHECK(b.degree() == 5);
}

TEST_CASE("loop combine keeps the degree and models geometric retries") {
  OverheadPoly same = combine_loop(OverheadPoly::base(), 1.0);
  CHECK(same.coeff == OverheadPoly::base().coeff);

  OverheadPoly half = combine_loop(OverheadPoly::base(), 0.5);
  REQUIRE(half.coeff.size() == 2);
  CHECK(half.coeff[0] == doctest::Approx(-1.0));
  CHECK(half.coeff[1] == doctest::Approx(2.0));
  OverheadDistribution d = expand_distribution(half, 30);
  CHECK(d.pmf_at(1) == doctest::Approx(0.5));
  CHECK(d.pmf_at(2) == doctest::Approx(0.25));
  CHECK(d.pmf_at(3) == doctest::Approx(0.125));

  // First moment scales by 1/p under a loop.
  OverheadPoly two = combine_link(OverheadPoly::base(), OverheadPoly::base(), 0.5);
  OverheadPoly looped = combine_loop(two, 0.25);
  double mean_before = expand_distribution(two, 400).mean_upto();
  double mean_after = expand_distribution(looped, 1600).mean_upto();
  CHECK(mean_after == doctest::Approx(mean_before / 0.25).epsilon(1e-6));
}

TEST_CASE("bad probabilities are rejected") {
  CHECK_THROWS_AS(combine_link(OverheadPoly::base(), OverheadPoly::base(), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(combine_loop(OverheadPoly::base(), 1.0001), std::invalid_argument);
}

TEST_CASE("two-node network distribution is geometric on even counts") {
  FusionNetwork net = bare_network(2, {{0, 1}});
  FusionSchedule s = sequential_schedule(net, 0.5, Measure::Overhead);
  OverheadDistribution d = distribution(net, s, 0.5, 40);
  CHECK(d.min_count == 2);
  CHECK(d.pmf_at(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.pmf_at(3) == doctest::Approx(0.0));
  CHECK(d.pmf_at(4) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(d.pmf_at(6) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(d.cmf_at(2) == doctest::Approx(0.5));
  CHECK(d.cmf_at(5) == doctest::Approx(0.75));
  CHECK(d.cmf_at(6) == doctest::Approx(0.875));
}

TEST_CASE("single node distribution is a point mass") {
  FusionNetwork net = bare_network(1, {});
  FusionSchedule s = sequential_schedule(net, 0.5, Measure::Overhead);
  OverheadDistribution d = distribution(net, s, 0.5, 10);
  CHECK(d.min_count == 1);
  CHECK(d.pmf_at(1) == doctest::Approx(1.0));
  CHECK(d.cmf_at(7) == doctest::Approx(1.0));
}

TEST_CASE("c_max below the minimum resource count is an error") {
  FusionNetwork net = bare_network(2, {{0, 1}});
  FusionSchedule s = sequential_schedule(net, 0.5, Measure::Overhead);
  CHECK_THROWS_WITH_AS(distribution(net, s, 0.5, 1),
                       doctest::Contains("minimum resource count"), std::invalid_argument);
}

TEST_CASE("quantiles walk the cumulative mass") {
  FusionNetwork net = bare_network(2, {{0, 1}});
  FusionSchedule s = sequential_schedule(net, 0.5, Measure::Overhead);
  OverheadDistribution d = distribution(net, s, 0.5, 40);
  CHECK(quantile(d, 0.9) == 8);  // cmf: 0.5, 0.75, 0.875, 0.9375 at c = 2,4,6,8
  CHECK(quantile(d, 0.4) == 2);
  CHECK_THROWS_AS(quantile(d, 1.0 - 1e-15), std::invalid_argument);
  CHECK_THROWS_AS(quantile(d, 0.0), std::invalid_argument);
}

TEST_CASE("distribution mean matches the schedule overhead") {
  Rng rng(5);
  for (const char* spec : {"star:6", "star:12", "tree:2,2", "cycle:6"}) {
    Graph g = generate(FamilySpec::parse(spec), rng);
    StrategyConfig cfg;
    cfg.master_seed = 11;
    Outcome out = optimize(g, cfg, IterationPlan::fixed(40), 1);
    std::size_t c_max = 64;
    for (;;) {
      c_max *= 2;
      OverheadDistribution d = distribution(out.network, out.schedule, cfg.p_succ, c_max);
      if (d.unassigned_tail() < 1e-10) {
        CHECK(d.mean_upto() == doctest::Approx(out.q_opt).epsilon(1e-6));
        break;
      }
      REQUIRE(c_max < (1u << 22));
    }
  }
}

TEST_CASE("pmf is nonnegative and the cmf converges to one") {
  Rng rng(9);
  Graph g = generate(FamilySpec::parse("tree:2,2"), rng);
  StrategyConfig cfg;
  cfg.master_seed = 3;
  Outcome out = optimize(g, cfg, IterationPlan::fixed(30), 1);
  OverheadDistribution d = distribution(out.network, out.schedule, 0.5, 4000);
  double running = 0.0;
  for (std::size_t j = 0; j < d.pmf.size(); ++j) {
    CHECK(d.pmf[j] >= -1e-9);
    running += d.pmf[j];
    CHECK(d.cmf[j] == doctest::Approx(running).epsilon(1e-9));
  }
  CHECK(d.unassigned_tail() < 1e-6);
  CHECK(d.cmf.back() <= 1.0 + 1e-9);
}

TEST_CASE("series evaluation inverts the polynomial on the unit circle") {
  Rng rng(14);
  Graph g = generate(FamilySpec::parse("star:8"), rng);
  StrategyConfig cfg;
  cfg.master_seed = 21;
  Outcome out = optimize(g, cfg, IterationPlan::fixed(10), 1);
  OverheadPoly poly = network_poly(out.network, out.schedule, 0.5);
  OverheadDistribution d = distribution(out.network, out.schedule, 0.5, 6000);
  REQUIRE(d.unassigned_tail() < 1e-9);

  Rng krng(77);
  for (int i = 0; i < 20; ++i) {
    double k = krng.unit() * 3.0;  // avoid k = pi where the series converges slowly
    std::complex<double> z(std::cos(k), std::sin(k));
    std::complex<double> series = 0.0;
    for (std::size_t j = d.pmf.size(); j-- > 0;)
      series += d.pmf[j] * std::pow(z, static_cast<double>(d.min_count + j));
    std::complex<double> denom = 0.0;
    for (std::size_t l = 0; l < poly.coeff.size(); ++l)
      denom += poly.coeff[l] * std::pow(z, -static_cast<double>(l));
    CHECK(std::abs(series - 1.0 / denom) < 1e-6);
  }
}

TEST_CASE("degenerate schedules are rejected") {
  FusionNetwork net = bare_network(3, {{0, 1}, {1, 2}});
  FusionSchedule s = sequential_schedule(net, 0.5, Measure::Overhead);
  s.rounds.pop_back();
  CHECK_THROWS_AS(distribution(net, s, 0.5, 50), std::invalid_argument);
}

TEST_CASE("monte carlo retry simulation matches the 4-node path distribution") {
  FusionNetwork net = bare_network(4, {{0, 1}, {1, 2}, {2, 3}});
  Rng order_rng(2);
  FusionSchedule s = determine_order(net, 0.5, Measure::Overhead, order_rng);
  OverheadDistribution d = distribution(net, s, 0.5, 400);

  // Independent simulator: regenerate both inputs of a fusion on failure and
  // count consumed basic states. The contraction tree is (0+1), (2+3), then
  // the two merged halves.
  Rng rng(123456);
  auto sample_pair = [&](auto&& self, int depth) -> std::uint64_t {
    std::uint64_t cost = 0;
    for (;;) {
      cost += depth == 0 ? 2 : self(self, depth - 1) + self(self, depth - 1);
      if (rng.coin()) return cost;
    }
  };
  const int runs = 100000;
  std::map<std::uint64_t, int> histogram;
  for (int i = 0; i < runs; ++i) histogram[sample_pair(sample_pair, 1)]++;

  for (std::size_t c = 4; c <= 24; ++c) {
    double expect = d.pmf_at(c) * runs;
    if (expect < 10.0) continue;
    double got = histogram.count(c) ? histogram.at(c) : 0;
    double sigma = std::sqrt(expect * (1.0 - d.pmf_at(c)));
    CHECK(std::abs(got - expect) <= 3.0 * sigma);
  }
}
