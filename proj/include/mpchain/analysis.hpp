#pragma once

// Sweep engine, peak finding, scaling fits and data collapse, plus the
// machine-readable table formats used by the command line tool.

#include <optional>
#include <string>
#include <vector>

#include "mpchain/types.hpp"

namespace mpchain {

enum class Quantity { entropy, negativity, correlator_zz, correlator_xy };
enum class Mode { finite, thermo };

std::string to_string(Quantity q);
std::string to_string(Mode m);
Quantity quantity_from_string(const std::string& s);
Mode mode_from_string(const std::string& s);

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool log_scale = false;

  std::vector<double> points() const;
};

struct SweepSpec {
  Quantity quantity = Quantity::negativity;
  GridSpec g;
  std::vector<long> n_list;  // finite mode only
  std::vector<int> r_list;   // unused for entropy
  int sigma = +1;
  Mode mode = Mode::finite;
  LogBase log_base = LogBase::two;  // entropy only

  void validate() const;
};

struct SweepRow {
  int sigma = +1;
  Mode mode = Mode::finite;
  double g = 0.0;
  std::optional<long> n;
  std::optional<int> r;
  std::string quantity;
  std::optional<double> value;
  std::string error;  // per-point failures never abort a sweep
};

// One row per grid point, ordered lexicographically over (g, N, r).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Named datasets sufficient to replot each figure. fig6 is the collapse run
// and is handled by scaling_analysis; preset_specs covers the others.
std::vector<SweepSpec> preset_specs(const std::string& name);
bool preset_is_scaling(const std::string& name);

struct PeakResult {
  double g_m = 0.0;
  double e_m = 0.0;
};

// Location and height of the near-critical maximum of the adjacent-site
// negativity over g (sigma = +1). The profile develops a second, broad
// maximum near g ~ 0.5 coming from the large-N envelope; the scaling laws
// concern the leftmost peak, so that is the one bracketed and refined.
PeakResult find_peak(const ModelParams& base, long n_sites);

struct CollapseSettings {
  // Per-N grids sample g = x / N so every curve covers the same window of
  // x = N g; the window below spans 4.7 decades.
  double x_lo = 1e-5;
  double x_hi = 0.5;
  int points_per_n = 160;
};

struct ScalingFit {
  double slope_gm = 0.0;
  double intercept_gm = 0.0;  // log10 units
  double slope_em = 0.0;
  double intercept_em = 0.0;
  double rss_gm = 0.0;
  double rss_em = 0.0;
  std::vector<long> n_list;
  std::vector<PeakResult> peaks;
  double collapse_scatter = 0.0;  // max vertical spread of log10(N E), log10 units
  double collapse_window_lo = 0.0;  // common window in log10(N g)
  double collapse_window_hi = 0.0;
  std::vector<SweepRow> collapse_rows;  // (g, N) -> adjacent-site negativity
};

std::vector<long> default_scaling_sizes();  // 20, 25, ..., 85

ScalingFit scaling_analysis(const std::vector<long>& n_list,
                            const CollapseSettings& settings = {});

// CSV with the fixed header sigma,mode,g,N,r,quantity,value,error; floats at
// 17 significant digits so parse -> serialize round-trips byte-identically.
std::string report_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& text);
std::string report_json(const std::vector<SweepRow>& rows);

std::string format_double(double v);  // %.17g

}  // namespace mpchain
