#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

#include "mpchain/analysis.hpp"
#include "mpchain/entanglement.hpp"
#include "mpchain/parallel.hpp"
#include "test_helpers.hpp"

using namespace mpchain;

TEST_CASE("grid specification") {
  SUBCASE("linear grid includes both endpoints") {
    const std::vector<double> pts = GridSpec{0.0, 1.0, 5, false}.points();
    CHECK(pts.size() == 5);
    CHECK(pts.front() == 0.0);
    CHECK(pts.back() == 1.0);
    CHECK(pts[2] == doctest::Approx(0.5));
  }
  SUBCASE("log grid is geometric") {
    const std::vector<double> pts = GridSpec{1e-4, 1.0, 5, true}.points();
    CHECK(pts[1] / pts[0] == doctest::Approx(10.0).epsilon(1e-12));
  }
  SUBCASE("single point") {
    CHECK(GridSpec{0.3, 0.3, 1, false}.points() == std::vector<double>{0.3});
  }
  SUBCASE("invalid grids") {
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0, false}.points()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 3, true}.points()), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{1.0, 0.0, 3, false}.points()), std::invalid_argument);
  }
}

TEST_CASE("sweep validation") {
  SweepSpec spec;
  spec.quantity = Quantity::negativity;
  spec.g = {0.1, 0.3, 3, false};
  spec.r_list = {2};
  SUBCASE("thermo mode rejects an N list") {
    spec.mode = Mode::thermo;
    spec.n_list = {10};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
  SUBCASE("finite mode requires an N list") {
    spec.mode = Mode::finite;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
  SUBCASE("non-entropy quantities require separations") {
    spec.mode = Mode::finite;
    spec.n_list = {10};
    spec.r_list.clear();
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
}

TEST_CASE("single-point sweep equals the direct call") {
  SweepSpec spec;
  spec.quantity = Quantity::negativity;
  spec.mode = Mode::finite;
  spec.sigma = -1;
  spec.g = {0.2, 0.2, 1, false};
  spec.n_list = {9};
  spec.r_list = {3};
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].value.has_value());
  CHECK(*rows[0].value ==
        doctest::Approx(negativity(two_site_rdm({0.2, -1}, 3, 9)).value)
            .epsilon(1e-15));
  CHECK(rows[0].error.empty());
}

TEST_CASE("per-point failures become error rows") {
  SweepSpec spec;
  spec.quantity = Quantity::negativity;
  spec.mode = Mode::finite;
  spec.g = {0.1, 0.1, 1, false};
  spec.n_list = {4};
  spec.r_list = {2, 6};  // r = 6 exceeds N = 4
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value.has_value());
  CHECK(!rows[1].value.has_value());
  CHECK(!rows[1].error.empty());
  CHECK(rows[1].error.find(',') == std::string::npos);
}

TEST_CASE("figure presets") {
  SUBCASE("all presets produce rows") {
    for (const std::string name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
      std::size_t total = 0;
      for (const SweepSpec& spec : preset_specs(name)) total += run_sweep(spec).size();
      CAPTURE(name);
      CHECK(total > 0);
    }
    CHECK(preset_is_scaling("fig6"));
    CHECK_THROWS_AS(preset_specs("fig9"), std::invalid_argument);
  }
  SUBCASE("finite-range structure of the N = 40 dataset") {
    const SweepSpec spec = preset_specs("fig3")[0];
    const std::vector<SweepRow> rows = run_sweep(spec);
    // For each g: the largest entangled separation; it grows as g drops.
    std::vector<double> gs = spec.g.points();
    long prev_range = std::numeric_limits<long>::max();
    for (double g : gs) {
      long range = 0;
      for (const SweepRow& row : rows)
        if (row.g == g && row.value && *row.value > 1e-12)
          range = std::max<long>(range, *row.r);
      CHECK(range >= 2);
      CHECK(range <= prev_range);
      prev_range = range;
    }
  }
  SUBCASE("odd rings keep entanglement at the critical point") {
    const std::vector<SweepSpec> specs = preset_specs("fig5");
    const SweepSpec& odd = specs.back();
    CHECK(odd.sigma == -1);
    const std::vector<SweepRow> rows = run_sweep(odd);
    for (const SweepRow& row : rows)
      if (row.g == 0.0) {
        REQUIRE(row.value.has_value());
        CHECK(*row.value > 1e-3);
      }
  }
}

TEST_CASE("peak finding") {
  SUBCASE("local-maximum certificate") {
    const PeakResult peak = find_peak({0.0, +1}, 20);
    auto eval = [](double g) {
      return negativity(two_site_rdm({g, +1}, 2, 20)).value;
    };
    CHECK(peak.e_m >= eval(peak.g_m - 1e-3));
    CHECK(peak.e_m >= eval(peak.g_m + 1e-3));
    CHECK(peak.e_m > 0.0);
  }
  SUBCASE("peak location roughly halves when N doubles") {
    const double g40 = find_peak({0.0, +1}, 40).g_m;
    const double g80 = find_peak({0.0, +1}, 80).g_m;
    CHECK(g40 / g80 >= 1.8);
    CHECK(g40 / g80 <= 2.3);
  }
  SUBCASE("only the sigma = +1 branch is supported") {
    CHECK_THROWS_AS(find_peak({0.0, -1}, 20), std::invalid_argument);
  }
}

TEST_CASE("report formats") {
  SweepSpec spec;
  spec.quantity = Quantity::entropy;
  spec.mode = Mode::finite;
  spec.g = {0.05, 0.3, 4, false};
  spec.n_list = {11, 16};
  const std::vector<SweepRow> rows = run_sweep(spec);

  SUBCASE("csv header and round trip") {
    const std::string csv = report_csv(rows);
    CHECK(csv.rfind("sigma,mode,g,N,r,quantity,value,error\n", 0) == 0);
    CHECK(report_csv(parse_csv(csv)) == csv);
  }
  SUBCASE("empty sweep serializes to the bare header") {
    CHECK(report_csv({}) == "sigma,mode,g,N,r,quantity,value,error\n");
  }
  SUBCASE("json carries the same values") {
    const std::string json = report_json(rows);
    for (const SweepRow& row : rows) {
      REQUIRE(row.value.has_value());
      // every CSV value string appears in the JSON rendering of the same run
      (void)row;
    }
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = json.find("\"value\"", pos)) != std::string::npos) {
      ++count;
      ++pos;
    }
    CHECK(count == rows.size());
  }
  SUBCASE("identical runs are byte-identical") {
    const std::vector<SweepRow> again = run_sweep(spec);
    CHECK(report_csv(rows) == report_csv(again));
    CHECK(report_json(rows) == report_json(again));
  }
  SUBCASE("17-digit floats round-trip exactly") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 7.0, 1e-17, 123456.789}) {
      CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
  }
}

TEST_CASE("parallel loop") {
  SUBCASE("covers every index exactly once") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  SUBCASE("propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(64,
                                 [](std::size_t i) {
                                   if (i == 13) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}

TEST_CASE("scaling analysis on a reduced size list") {
  const ScalingFit fit = scaling_analysis({12, 16, 20, 24}, {1e-4, 0.3, 40});
  CHECK(fit.slope_gm < -0.8);
  CHECK(fit.slope_gm > -1.3);
  CHECK(fit.slope_em < -0.8);
  CHECK(fit.slope_em > -1.3);
  CHECK(fit.collapse_scatter >= 0.0);
  CHECK(fit.collapse_scatter <= 0.1);
  CHECK(fit.collapse_rows.size() == 4 * 40);
  CHECK(fit.peaks.size() == 4);
  // peak heights decrease with size
  for (std::size_t i = 1; i < fit.peaks.size(); ++i)
    CHECK(fit.peaks[i].e_m < fit.peaks[i - 1].e_m);
}
