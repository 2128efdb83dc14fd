#include "mpchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "mpchain/entanglement.hpp"
#include "mpchain/observables.hpp"
#include "mpchain/parallel.hpp"

namespace mpchain {

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::entropy: return "entropy";
    case Quantity::negativity: return "negativity";
    case Quantity::correlator_zz: return "correlator-zz";
    case Quantity::correlator_xy: return "correlator-xy";
  }
  throw std::logic_error("unknown quantity");
}

std::string to_string(Mode m) {
  return m == Mode::finite ? "finite" : "thermo";
}

Quantity quantity_from_string(const std::string& s) {
  if (s == "entropy") return Quantity::entropy;
  if (s == "negativity") return Quantity::negativity;
  if (s == "correlator-zz") return Quantity::correlator_zz;
  if (s == "correlator-xy") return Quantity::correlator_xy;
  throw std::invalid_argument("unknown quantity: " + s);
}

Mode mode_from_string(const std::string& s) {
  if (s == "finite") return Mode::finite;
  if (s == "thermo") return Mode::thermo;
  throw std::invalid_argument("unknown mode: " + s);
}

std::vector<double> GridSpec::points() const {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (count == 1) return {min};
  if (max < min) throw std::invalid_argument("grid max below min");
  if (log_scale && min <= 0.0)
    throw std::invalid_argument("log grid requires min > 0");
  std::vector<double> pts(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    pts[i] = log_scale ? min * std::pow(max / min, t) : min + t * (max - min);
  }
  return pts;
}

void SweepSpec::validate() const {
  if (sigma != 1 && sigma != -1)
    throw std::invalid_argument("sigma must be +1 or -1");
  (void)g.points();
  if (mode == Mode::thermo) {
    if (!n_list.empty())
      throw std::invalid_argument("thermo mode takes no N list");
  } else {
    if (n_list.empty()) throw std::invalid_argument("finite mode needs an N list");
    for (long n : n_list)
      if (n < 2) throw std::invalid_argument("N must be >= 2");
  }
  if (quantity != Quantity::entropy) {
    if (r_list.empty()) throw std::invalid_argument("quantity needs an r list");
    for (int r : r_list)
      if (r < 2) throw std::invalid_argument("r must be >= 2");
  }
}

namespace {

std::string sanitize(std::string msg) {
  for (char& c : msg)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return msg;
}

double thermo_negativity_value(const ModelParams& p, int r) {
  const PtSpectrum spec = pt_spectrum_thermo(p, r);
  double v = 0.0;
  for (double w : spec.omega)
    if (w < -kNegativityTol) v += -w;
  return v;
}

double evaluate_point(const SweepSpec& spec, double g, std::optional<long> n,
                      std::optional<int> r) {
  const ModelParams p{g, spec.sigma};
  switch (spec.quantity) {
    case Quantity::entropy:
      return n ? one_site_entropy(p, *n, spec.log_base)
               : one_site_entropy_thermo(p, spec.log_base);
    case Quantity::negativity:
      return n ? negativity(two_site_rdm(p, *r, *n)).value
               : thermo_negativity_value(p, *r);
    case Quantity::correlator_zz:
      return two_point_zz(p, *r, n).value;
    case Quantity::correlator_xy:
      return two_point_transverse(p, *r, n).value;
  }
  throw std::logic_error("unknown quantity");
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> gs = spec.g.points();
  std::vector<std::optional<long>> ns;
  if (spec.mode == Mode::finite)
    for (long n : spec.n_list) ns.emplace_back(n);
  else
    ns.emplace_back(std::nullopt);
  std::vector<std::optional<int>> rs;
  if (spec.quantity == Quantity::entropy)
    rs.emplace_back(std::nullopt);
  else
    for (int r : spec.r_list) rs.emplace_back(r);

  // Lexicographic over (g, N, r); slot-indexed so parallel execution cannot
  // reorder the output.
  std::vector<SweepRow> rows(gs.size() * ns.size() * rs.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t gi = idx / (ns.size() * rs.size());
    const std::size_t ni = (idx / rs.size()) % ns.size();
    const std::size_t ri = idx % rs.size();
    SweepRow& row = rows[idx];
    row.sigma = spec.sigma;
    row.mode = spec.mode;
    row.g = gs[gi];
    row.n = ns[ni];
    row.r = rs[ri];
    row.quantity = to_string(spec.quantity);
    try {
      row.value = evaluate_point(spec, gs[gi], ns[ni], rs[ri]);
    } catch (const std::exception& e) {
      row.error = sanitize(e.what());
    }
  });
  return rows;
}

bool preset_is_scaling(const std::string& name) { return name == "fig6"; }

std::vector<SweepSpec> preset_specs(const std::string& name) {
  if (name == "fig1") {
    SweepSpec s;
    s.quantity = Quantity::negativity;
    s.mode = Mode::thermo;
    s.sigma = +1;
    s.g = {0.01, 0.5, 50, false};
    for (int r = 2; r <= 30; ++r) s.r_list.push_back(r);
    return {s};
  }
  if (name == "fig2") {
    std::vector<SweepSpec> out;
    for (int sigma : {+1, -1}) {
      SweepSpec s;
      s.quantity = Quantity::entropy;
      s.mode = Mode::finite;
      s.sigma = sigma;
      s.g = {0.0, 2.0, 101, false};
      s.n_list = {15, 21, 25, 31, 35};
      out.push_back(s);
    }
    return out;
  }
  if (name == "fig3") {
    SweepSpec s;
    s.quantity = Quantity::negativity;
    s.mode = Mode::finite;
    s.sigma = +1;
    s.g = {0.02, 0.18, 5, false};
    s.n_list = {40};
    for (int r = 2; r <= 20; ++r) s.r_list.push_back(r);
    return {s};
  }
  if (name == "fig4") {
    SweepSpec s;
    s.quantity = Quantity::negativity;
    s.mode = Mode::finite;
    s.sigma = +1;
    // Just above the threshold where separation r = 5 loses its infinite-N
    // entanglement; the r = 5 curve dies at finite ring size here.
    s.g = {0.097, 0.097, 1, false};
    for (long n = 6; n <= 60; ++n) s.n_list.push_back(n);
    s.r_list = {2, 3, 4, 5};
    return {s};
  }
  if (name == "fig5") {
    std::vector<SweepSpec> out;
    SweepSpec even;
    even.quantity = Quantity::negativity;
    even.mode = Mode::finite;
    even.sigma = +1;
    even.g = {0.002, 0.3, 150, false};
    even.n_list = {15, 20, 25, 30, 35};
    even.r_list = {2};
    out.push_back(even);
    SweepSpec thermo;
    thermo.quantity = Quantity::negativity;
    thermo.mode = Mode::thermo;
    thermo.sigma = +1;
    thermo.g = {0.002, 0.3, 150, false};
    thermo.r_list = {2};
    out.push_back(thermo);
    SweepSpec odd;
    odd.quantity = Quantity::negativity;
    odd.mode = Mode::finite;
    odd.sigma = -1;
    odd.g = {0.0, 0.3, 151, false};
    odd.n_list = {15, 21, 25, 31, 35};
    odd.r_list = {2};
    out.push_back(odd);
    return out;
  }
  throw std::invalid_argument("unknown preset: " + name +
                              " (expected fig1..fig6)");
}

PeakResult find_peak(const ModelParams& base, long n_sites) {
  if (base.sigma != +1)
    throw std::invalid_argument("peak search is defined on the sigma = +1 branch");
  if (n_sites < 3) throw std::invalid_argument("peak search needs N >= 3");

  auto eval = [n_sites](double g) {
    return negativity(two_site_rdm(ModelParams{g, +1}, 2, n_sites)).value;
  };

  constexpr int kCoarse = 200;
  const double lo = 1e-4, hi = 1.0;
  std::vector<double> gs(kCoarse), es(kCoarse);
  for (int i = 0; i < kCoarse; ++i) {
    gs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kCoarse - 1));
    es[i] = eval(gs[i]);
  }
  int peak = -1;
  for (int i = 1; i + 1 < kCoarse; ++i) {
    if (es[i] > kNegativityTol && es[i] >= es[i - 1] && es[i] >= es[i + 1]) {
      peak = i;
      break;
    }
  }
  if (peak < 0)
    throw std::runtime_error("negativity profile has no interior maximum");

  double a = gs[peak - 1], b = gs[peak + 1];
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  while (b - a > 1e-6) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = eval(x1);
    }
  }
  const double gm = 0.5 * (a + b);
  return PeakResult{gm, eval(gm)};
}

std::vector<long> default_scaling_sizes() {
  std::vector<long> ns;
  for (long n = 20; n <= 85; n += 5) ns.push_back(n);
  return ns;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rss = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - fit.slope * x[i] - fit.intercept;
    fit.rss += resid * resid;
  }
  return fit;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                   double x) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

ScalingFit scaling_analysis(const std::vector<long>& n_list,
                            const CollapseSettings& settings) {
  if (n_list.size() < 2)
    throw std::invalid_argument("scaling analysis needs at least two sizes");

  ScalingFit fit;
  fit.n_list = n_list;
  fit.peaks.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    fit.peaks[i] = find_peak(ModelParams{0.0, +1}, n_list[i]);
  });

  std::vector<double> log_n, log_gm, log_em;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    log_n.push_back(std::log10(static_cast<double>(n_list[i])));
    log_gm.push_back(std::log10(fit.peaks[i].g_m));
    log_em.push_back(std::log10(fit.peaks[i].e_m));
  }
  const LineFit gm_fit = least_squares(log_n, log_gm);
  const LineFit em_fit = least_squares(log_n, log_em);
  fit.slope_gm = gm_fit.slope;
  fit.intercept_gm = gm_fit.intercept;
  fit.rss_gm = gm_fit.rss;
  fit.slope_em = em_fit.slope;
  fit.intercept_em = em_fit.intercept;
  fit.rss_em = em_fit.rss;

  // Collapse dataset: per-N samples of x = N g over a shared window.
  const int pts = settings.points_per_n;
  fit.collapse_rows.resize(n_list.size() * pts);
  parallel_for(fit.collapse_rows.size(), [&](std::size_t idx) {
    const std::size_t ni = idx / pts;
    const int j = static_cast<int>(idx % pts);
    const long n = n_list[ni];
    const double t = static_cast<double>(j) / (pts - 1);
    const double x = settings.x_lo * std::pow(settings.x_hi / settings.x_lo, t);
    const double g = x / static_cast<double>(n);
    SweepRow& row = fit.collapse_rows[idx];
    row.sigma = +1;
    row.mode = Mode::finite;
    row.g = g;
    row.n = n;
    row.r = 2;
    row.quantity = to_string(Quantity::negativity);
    try {
      row.value = negativity(two_site_rdm(ModelParams{g, +1}, 2, n)).value;
    } catch (const std::exception& e) {
      row.error = sanitize(e.what());
    }
  });

  // Per-N curves in (log10(N g), log10(N E)); intersect the windows and take
  // the worst vertical spread over a uniform probe grid.
  std::vector<std::vector<double>> xs(n_list.size()), ys(n_list.size());
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = std::numeric_limits<double>::infinity();
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    for (int j = 0; j < pts; ++j) {
      const SweepRow& row = fit.collapse_rows[ni * pts + j];
      if (!row.value || *row.value <= 0.0) continue;
      const double nd = static_cast<double>(n_list[ni]);
      xs[ni].push_back(std::log10(nd * row.g));
      ys[ni].push_back(std::log10(nd * *row.value));
    }
    if (xs[ni].size() < 2)
      throw std::runtime_error("collapse curve is empty for one of the sizes");
    window_lo = std::max(window_lo, xs[ni].front());
    window_hi = std::min(window_hi, xs[ni].back());
  }
  fit.collapse_window_lo = window_lo;
  fit.collapse_window_hi = window_hi;

  constexpr int kProbes = 201;
  double scatter = 0.0;
  for (int k = 0; k < kProbes; ++k) {
    const double x =
        window_lo + (window_hi - window_lo) * static_cast<double>(k) / (kProbes - 1);
    double lo_y = std::numeric_limits<double>::infinity();
    double hi_y = -std::numeric_limits<double>::infinity();
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
      const double y = interpolate(xs[ni], ys[ni], x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
    scatter = std::max(scatter, hi_y - lo_y);
  }
  fit.collapse_scatter = scatter;
  return fit;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {
constexpr const char* kCsvHeader = "sigma,mode,g,N,r,quantity,value,error";
}

std::string report_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepRow& row : rows) {
    out += std::to_string(row.sigma);
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += format_double(row.g);
    out += ',';
    if (row.n) out += std::to_string(*row.n);
    out += ',';
    if (row.r) out += std::to_string(*row.r);
    out += ',';
    out += row.quantity;
    out += ',';
    if (row.value) out += format_double(*row.value);
    out += ',';
    out += row.error;
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("unexpected CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < 8) cells.emplace_back();
    SweepRow row;
    row.sigma = std::stoi(cells[0]);
    row.mode = mode_from_string(cells[1]);
    row.g = std::strtod(cells[2].c_str(), nullptr);
    if (!cells[3].empty()) row.n = std::stol(cells[3]);
    if (!cells[4].empty()) row.r = std::stoi(cells[4]);
    row.quantity = cells[5];
    if (!cells[6].empty()) row.value = std::strtod(cells[6].c_str(), nullptr);
    row.error = cells[7];
    rows.push_back(row);
  }
  return rows;
}

std::string report_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& row : rows) {
    nlohmann::ordered_json obj;
    obj["sigma"] = row.sigma;
    obj["mode"] = to_string(row.mode);
    obj["g"] = row.g;
    if (row.n)
      obj["N"] = *row.n;
    else
      obj["N"] = nullptr;
    if (row.r)
      obj["r"] = *row.r;
    else
      obj["r"] = nullptr;
    obj["quantity"] = row.quantity;
    if (row.value)
      obj["value"] = *row.value;
    else
      obj["value"] = nullptr;
    obj["error"] = row.error;
    arr.push_back(obj);
  }
  return arr.dump(1, ' ') + "\n";
}

}  // namespace mpchain
