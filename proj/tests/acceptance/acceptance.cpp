// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "tbdecay/analytic.hpp"
#include "tbdecay/bpm/mode_solver.hpp"
#include "tbdecay/bpm/propagator.hpp"
#include "tbdecay/evolve.hpp"
#include "tbdecay/zeno.hpp"

using namespace tbdecay;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %-34s %s [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(),
              elapsed, limit_s, in_time ? "" : ", over time");
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double envelope_near(const CouplingModel& m, double t0) {
  const double h = 0.02;
  const double a = std::abs(exact_amplitude(m, t0 - h));
  const double b = std::abs(exact_amplitude(m, t0));
  const double c = std::abs(exact_amplitude(m, t0 + h));
  const double curvature = a - 2.0 * b + c;
  if (curvature >= 0.0) return b;
  const double shift = 0.5 * (a - c) / curvature;
  return b - 0.25 * (a - c) * shift;
}

double sup_correction_ratio(double delta) {
  const CouplingModel m(delta);
  double sup = 0.0;
  for (int k = 0; k <= 5000; ++k) sup = std::max(sup, std::abs(decay_decomposition(m, 0.01 * k).correction));
  return sup / (delta * delta);
}

int run_tool(const std::string& arguments) {
  const std::string cmd = std::string(TBDECAY_TOOL_PATH) + " " + arguments + " > /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  criterion(1, "strong-coupling closed form", 5.0, [] {
    const CouplingModel m(1.0);
    double worst = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      const double t = 0.05 * k;
      worst = std::max(worst, std::abs(exact_amplitude(m, t) - testing::reference_bessel_j(1, 2.0 * t) / t));
    }
    worst = std::max(worst, std::abs(exact_amplitude(m, 0.0) - 1.0));
    return Outcome{worst < 1e-10, fmt("max |c1 - J1(2t)/t| = %.2e", worst)};
  });

  criterion(2, "oracle triangle", 30.0, [] {
    double rk4 = 0.0, dec = 0.0;
    for (double d : {0.3, 0.5, 0.7, 0.9, 1.0}) {
      const CouplingModel m(d);
      const auto traj = evolve(m, 30.0);
      for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times()[k];
        const Complex q = exact_amplitude(m, t);
        rk4 = std::max(rk4, std::abs(q - traj.amplitude(k, 1)));
        if (d <= 0.7) dec = std::max(dec, std::abs(q - decay_decomposition(m, t).total()));
      }
    }
    return Outcome{rk4 < 1e-6 && dec < 1e-8, fmt("quadrature-RK4 %.2e, quadrature-decomposition %.2e", rk4, dec)};
  });

  criterion(3, "Gamow regime at delta = 0.3", 5.0, [] {
    const CouplingModel m(0.3);
    std::vector<double> t, lp;
    for (int k = 50; k <= 400; ++k) {
      t.push_back(0.1 * k);
      lp.push_back(std::log(std::norm(exact_amplitude(m, t.back()))));
    }
    const auto fit = testing::fit_line(t, lp);
    const double ln_z = 2.0 * std::log(m.sqrt_z());
    const bool slope_ok = std::abs(fit.slope + m.gamma0()) <= 0.05 * m.gamma0();
    const bool icpt_ok = std::abs(fit.intercept - ln_z) <= 0.10 * std::abs(ln_z);
    return Outcome{slope_ok && icpt_ok, fmt("slope %.5f (-gamma0 %.5f), intercept %.5f (ln Z %.5f)", fit.slope,
                                            -m.gamma0(), fit.intercept, ln_z)};
  });

  criterion(4, "Zeno threshold at delta = 0.3", 10.0, [] {
    const double tau = zeno_crossing(CouplingModel(0.3)).tau_star;
    return Outcome{tau >= 76.5 && tau <= 93.5, fmt("tau* = %.4f", tau)};
  });

  criterion(5, "anti-Zeno peak at delta = 0.9", 10.0, [] {
    const CouplingModel m(0.9);
    const auto p = antizeno_peak(m);
    return Outcome{p.tau >= 2.24 && p.tau <= 2.44 && p.gamma_eff > m.gamma0(),
                   fmt("tau = %.4f, gamma_eff = %.3f > gamma0 = %.3f", p.tau, p.gamma_eff, m.gamma0())};
  });

  criterion(6, "long-time t^-3/2 envelope", 20.0, [] {
    bool ok = true;
    std::string detail;
    for (double d : {0.5, 1.0}) {
      const CouplingModel m(d);
      std::vector<double> lt, le;
      for (int k = 0;; ++k) {
        const double t = (0.75 * kPi + kPi * k) / 2.0;
        if (t < 100.0) continue;
        if (t > 400.0) break;
        lt.push_back(std::log(t));
        le.push_back(std::log(envelope_near(m, t)));
      }
      const double slope = testing::fit_line(lt, le).slope;
      ok = ok && std::abs(slope + 1.5) <= 0.05;
      detail += fmt("delta %.1f: %.4f  ", d, slope);
    }
    return Outcome{ok, detail};
  });

  criterion(7, "short-time parabola", 1.0, [] {
    double worst = 0.0;
    for (double d : {0.3, 0.7, 1.0}) {
      const double t = 1e-3;
      const double ratio = (1.0 - std::norm(exact_amplitude(CouplingModel(d), t))) / (d * d * t * t);
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    return Outcome{worst < 1e-4, fmt("max |ratio - 1| = %.2e", worst)};
  });

  criterion(8, "weak-coupling correction ~ delta^2", 10.0, [] {
    const double c1 = sup_correction_ratio(0.1);
    const double c2 = sup_correction_ratio(0.2);
    const bool ok = std::isfinite(c1) && c1 <= 2.0 * c2 && c2 <= 2.0 * c1;
    return Outcome{ok, fmt("sup|s|/delta^2: %.4f (0.1), %.4f (0.2)", c1, c2)};
  });

  criterion(9, "spectral completeness", 5.0, [] {
    double worst = 0.0;
    for (double d : {0.1, 0.5, 0.9, 1.0}) {
      for (int n = 1; n <= 10; ++n) {
        const Complex v = site_amplitude(CouplingModel(d), n, 0.0);
        worst = std::max(worst, std::abs(v - (n == 1 ? 1.0 : 0.0)));
      }
    }
    return Outcome{worst < 1e-8, fmt("max |int F u_n - delta_n1| = %.2e", worst)};
  });

  criterion(10, "coupling extraction", 30.0, [] {
    bpm::WaveguideArraySpec spec;
    const double weak = bpm::hopping_ratio(spec).delta;
    spec.first_gap = 12.5;
    const double strong = bpm::hopping_ratio(spec).delta;
    const bool ok = std::abs(weak - 0.28) <= 0.05 && std::abs(strong - 0.86) <= 0.08;
    return Outcome{ok, fmt("delta(16 um) = %.4f, delta(12.5 um) = %.4f", weak, strong)};
  });

  criterion(11, "optical non-exponential decay", 300.0, [] {
    bpm::WaveguideArraySpec spec;
    spec.first_gap = 12.5;
    bpm::PropagationOptions opts;
    opts.z_max_mm = 50.0;
    opts.output_step_mm = 0.1;
    const auto r = bpm::propagate(spec, opts);
    std::vector<double> a;
    for (const auto& c : r.c1) a.push_back(std::abs(c));
    // strict local maxima that rise above the preceding minimum
    int maxima = 0;
    double trough = a.front();
    for (std::size_t k = 1; k + 1 < a.size(); ++k) {
      trough = std::min(trough, a[k]);
      if (a[k] > a[k - 1] && a[k] >= a[k + 1] && a[k] - trough > 1e-3) {
        ++maxima;
        trough = a[k];
      }
    }
    const CouplingModel m(r.coupling.delta);
    double peak_bpm = 0.0, peak_tb = 0.0;
    for (std::size_t k = 1; k < r.z_mm.size(); ++k) {
      const double t = r.coupling.kappa_per_mm * r.z_mm[k];
      peak_bpm = std::max(peak_bpm, effective_rate_from_amplitude(r.c1[k], t));
      peak_tb = std::max(peak_tb, effective_rate(m, t));
    }
    return Outcome{maxima >= 2 && peak_bpm < peak_tb,
                   fmt("%d local maxima, peak gamma_eff %.3f (BPM) < %.3f (lattice)", maxima, peak_bpm, peak_tb)};
  });

  criterion(12, "optical Zeno deceleration", 300.0, [] {
    bpm::WaveguideArraySpec plain;
    bpm::WaveguideArraySpec seg = plain;
    seg.geometry = bpm::ZenoSegmented{4.0, 20.0};
    bpm::PropagationOptions opts;
    opts.z_max_mm = 20.0;
    opts.output_step_mm = 0.5;
    const double a = std::abs(bpm::propagate(plain, opts).c1.back());
    const double b = std::abs(bpm::propagate(seg, opts).c1.back());
    return Outcome{b >= 1.2 * a, fmt("|c1(L)| segmented %.4f vs plain %.4f (+%.1f%%)", b, a, 100.0 * (b / a - 1.0))};
  });

  criterion(13, "figure determinism", 60.0, [] {
    const fs::path base = fs::temp_directory_path() / ("tbdecay_accept_" + std::to_string(::getpid()));
    const fs::path d1 = base / "a", d2 = base / "b";
    const int s1 = run_tool("figure fig2 --out " + d1.string());
    const int s2 = run_tool("figure fig2 --out " + d2.string());
    bool same = s1 == 0 && s2 == 0;
    std::size_t files = 0;
    if (same) {
      for (const auto& e : fs::directory_iterator(d1)) {
        ++files;
        const fs::path other = d2 / e.path().filename();
        same = same && fs::exists(other) && slurp(e.path()) == slurp(other);
      }
      std::size_t files2 = 0;
      for ([[maybe_unused]] const auto& e : fs::directory_iterator(d2)) ++files2;
      same = same && files > 0 && files == files2;
    }
    fs::remove_all(base);
    return Outcome{same, fmt("%zu files, exit %d/%d", files, s1, s2)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
