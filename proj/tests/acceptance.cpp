// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// All comparisons are exact integers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "bbs/harness.hpp"
#include "bbs/solutions.hpp"
#include "support.hpp"

#ifndef BBS_CONFIG_DIR
#define BBS_CONFIG_DIR "configs"
#endif

namespace {

using bbs::CapacityProfile;
using bbs::CarrierSchedule;
using bbs::Count;
using bbs::Time;
using bbs::XInt;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

bbs::DiffReport run_mode(bbs::DiffMode mode, std::size_t cases, Count steps) {
  bbs::DiffBounds bounds;
  bounds.mode = mode;
  bounds.steps = steps;
  return bbs::difftest(cases, kSeed, bounds, 1);
}

std::string first_failure(const bbs::DiffReport& r) {
  if (r.failures.empty()) return "";
  const auto& f = r.failures.front();
  return ", first: case " + std::to_string(f.case_index) + " step " + std::to_string(f.step) + " " + f.quantity +
         " (" + f.detail + ")";
}

bool has_failure(const std::vector<const bbs::DiffReport*>& reports, const std::string& prefix) {
  for (const auto* r : reports) {
    for (const auto& f : r->failures) {
      if (f.quantity.rfind(prefix, 0) == 0 || f.quantity == "Degenerate") return true;
    }
  }
  return false;
}

CarrierSchedule random_schedule(testing::Gen& g, Count lo, Count hi, Time last) {
  std::map<Time, XInt> entries;
  for (Time t = 1; t <= last; ++t) entries[t] = g.chance(20) ? XInt::inf() : XInt(g.range(lo, hi));
  return {entries, XInt::inf()};
}

// --- criterion 7 -------------------------------------------------------------

Outcome euler_solutions() {
  testing::Gen g(kSeed);
  const auto start = std::chrono::steady_clock::now();
  int sets = 0;
  int bad = 0;
  Count worst = 0;
  while (sets < 250) {
    bbs::EulerSolitonParams p;
    const auto size = static_cast<std::size_t>(g.range(1, 3));
    while (p.amplitudes.size() < size) {
      const Count a = g.range(1, 8);
      if (std::find(p.amplitudes.begin(), p.amplitudes.end(), a) == p.amplitudes.end()) p.amplitudes.push_back(a);
    }
    for (std::size_t i = 0; i < size; ++i) p.phases.push_back(g.range(-20, 20));
    p.profile = testing::random_profile(g, 4, g.range(-4, 4), g.range(1, 12));
    p.schedule = g.chance(30) ? CarrierSchedule::constant(XInt::inf()) : random_schedule(g, 1, 8, 11);
    const auto report = bbs::verify_euler_solution(p, 0, 10);
    worst = std::max(worst, report.max_residual());
    if (!report.ok()) ++bad;
    ++sets;
  }
  const double elapsed = seconds_since(start);
  return {bad == 0 && elapsed < 30.0,
          std::to_string(sets) + " parameter sets, N<=3, t in [0,10], max residual " + std::to_string(worst) + ", " +
              std::to_string(bad) + " failing, " + fmt_seconds(elapsed) + " (limit 30s)"};
}

// --- criterion 8 -------------------------------------------------------------

Outcome tau_solutions() {
  testing::Gen g(kSeed + 8);
  int sets = 0;
  int bad = 0;
  int single = 0;
  int single_bad = 0;
  Count worst = 0;
  while (sets < 250) {
    const auto size = g.range(1, 4);
    std::vector<Count> amps;
    while (static_cast<std::int64_t>(amps.size()) < size) {
      const Count a = g.range(1, 10);
      if (std::find(amps.begin(), amps.end(), a) == amps.end()) amps.push_back(a);
    }
    std::sort(amps.begin(), amps.end());
    std::vector<Count> weights;
    for (int i = 0; i < size; ++i) weights.push_back(g.range(-10, 10));
    const Count delta = g.range(1, 4);
    const bbs::TauParams p{amps, weights, delta, random_schedule(g, 4, 12, 16)};

    const auto report = bbs::verify_tau_solution(p, 0, 15);
    worst = std::max(worst, report.max_residual());
    if (!report.ok()) ++bad;

    if (size == 1) {
      ++single;
      for (Time t = 0; t <= 15; ++t) {
        const auto s = bbs::tau_toda_state(p, t);
        if (s.sizes.front() != amps.front() ||
            XInt(s.exit_loads.front()) != bbs::tmin(XInt(amps.front()), p.schedule.at(t))) {
          ++single_bad;
          break;
        }
      }
    }
    ++sets;
  }
  return {bad == 0 && single_bad == 0 && single > 0,
          std::to_string(sets) + " parameter sets, N<=4, t in [0,15], max residual " + std::to_string(worst) +
              ", enutoda slice agreement and E>=1 included, " + std::to_string(bad) + " failing; N=1 laws on " +
              std::to_string(single) + " sets, " + std::to_string(single_bad) + " failing"};
}

// --- criterion 9 -------------------------------------------------------------

Outcome free_soliton_speed() {
  const auto unit = CapacityProfile::uniform(1);
  int checked = 0;
  int bad = 0;
  for (Count q = 1; q <= 8; ++q) {
    for (Count m = 1; m <= 9; ++m) {
      const XInt cap = m == 9 ? XInt::inf() : XInt(m);
      const auto schedule = CarrierSchedule::constant(cap);
      const Count speed = bbs::tmin(XInt(q), cap).value();
      const std::vector<Count> sizes{q};
      bbs::EulerState s = bbs::positions_to_state(3, sizes, {}, unit);
      bbs::TodaState t{0, sizes, {}, 3, unit};
      for (int step = 1; step <= 6; ++step) {
        s = bbs::euler_step(s, schedule).state;
        t = bbs::enutoda_step(t, schedule).state;
        const auto blocks = bbs::extract_blocks(bbs::expand(s));
        const bool ok = blocks.sizes == sizes && blocks.anchor == 3 + step * speed && t.sizes == sizes &&
                        t.anchor == 3 + step * speed;
        ++checked;
        if (!ok) ++bad;
      }
    }
  }
  return {bad == 0, "Q0 in [1,8], M in [1,8] and inf, 6 steps each, " + std::to_string(checked) +
                        " displacement checks in both representations, " + std::to_string(bad) + " wrong"};
}

// --- criterion 10 ------------------------------------------------------------

Outcome alternating_example(std::string& rendering) {
  const std::string path = std::string(BBS_CONFIG_DIR) + "/alternating_3_5.json";
  bbs::RunConfig config = bbs::parse_config(path);
  const bool parameters = config.profile.capacity(0) == 3 && config.profile.capacity(1) == 5 &&
                          config.profile.capacity(-7) == 5 && config.profile.capacity(10) == 3 &&
                          config.schedule.at(1) == XInt(6) && config.schedule.at(50) == XInt(6) &&
                          config.schedule.at(0) == XInt::inf() && config.steps == 10 &&
                          config.representation == bbs::Representation::Both;
  const std::size_t solitons = bbs::extract_blocks(bbs::expand(bbs::initial_euler_state(config))).solitons();

  config.render = bbs::Render::Ascii;
  std::ostringstream ascii;
  const auto result = bbs::run_simulation(config, ascii);
  rendering = ascii.str();
  const auto lines = std::count(rendering.begin(), rendering.end(), '\n');

  const bool ok = parameters && solitons == 3 && result.verdicts.size() == 10 && result.all_equal() && lines == 10;
  return {ok, "Delta 3/5 alternating, M_t = 6 for t > 0, " + std::to_string(solitons) + " solitons, " +
                  std::to_string(std::count(result.verdicts.begin(), result.verdicts.end(), true)) +
                  "/10 steps equal, " + std::to_string(lines) + " ascii lines"};
}

void report(int number, const std::string& title, const Outcome& o, int& failures) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " -- " << o.detail << '\n';
  if (!o.pass) ++failures;
}

}  // namespace

int main() {
  int failures = 0;
  try {
    // 1: euler_step against the ball-by-ball carrier.
    auto start = std::chrono::steady_clock::now();
    const auto carrier = run_mode(bbs::DiffMode::Carrier, 10000, 20);
    const double carrier_time = seconds_since(start);
    report(1, "euler_step equals the ball-by-ball carrier",
           {carrier.ok() && carrier_time < 10.0 && carrier.counters.oracle_steps >= 10000,
            "10000 states (window<=32, Delta<=5, M in [1,10] or inf) x 20 steps, " +
                std::to_string(carrier.failures.size()) + " mismatches, " + fmt_seconds(carrier_time) +
                " (limit 10s)" + first_failure(carrier)},
           failures);

    // 2: unit boxes, unbounded carrier, utoda through the expansion map.
    const auto unit = run_mode(bbs::DiffMode::Unit, 10000, 20);
    report(2, "Euler equals utoda for Delta=1, M=inf",
           {unit.ok() && unit.counters.toda_steps == 200000,
            "10000 states x 20 steps, " + std::to_string(unit.counters.toda_steps) + " compared steps, " +
                std::to_string(unit.failures.size()) + " failures" + first_failure(unit)},
           failures);

    // 3: variable boxes and carrier, enutoda with anchor tracking.
    const auto full = run_mode(bbs::DiffMode::Full, 10000, 20);
    report(3, "Euler equals enutoda for Delta_n in [1,5], M_t in [max Delta, max Delta+5] or inf",
           {full.ok() && full.counters.toda_steps == 200000,
            "10000 states x 20 steps, " + std::to_string(full.counters.toda_steps) + " compared steps, " +
                std::to_string(full.failures.size()) + " failures" + first_failure(full)},
           failures);

    const auto chain = run_mode(bbs::DiffMode::Chain, 1000, 20);
    report(4, "reduction chain enutoda(M=inf) = extoda, extoda(Delta=1) = utoda = sumform = lagrange",
           {chain.ok() && chain.counters.reduction_checks >= 4000,
            "1000 Toda states x 20 steps, " + std::to_string(chain.counters.reduction_checks) + " reduction checks, " +
                std::to_string(chain.failures.size()) + " failures" + first_failure(chain)},
           failures);

    const std::vector<const bbs::DiffReport*> all{&carrier, &unit, &full, &chain};
    bbs::DiffCounters total;
    for (const auto* r : all) total += r->counters;
    const bool conserved = !has_failure(all, "conservation") && !has_failure(all, "positivity");
    report(5, "conservation of balls and solitons, Q and E >= 1",
           {conserved && total.conservation_checks > 0 && total.positivity_checks > 0,
            std::to_string(total.conservation_checks) + " conservation and " + std::to_string(total.positivity_checks) +
                " positivity checks, " + (conserved ? "0" : "some") + " violations"},
           failures);

    const Count euler_steps = carrier.counters.euler_steps + unit.counters.euler_steps + full.counters.euler_steps;
    const Count umkdv = carrier.counters.umkdv_checks + unit.counters.umkdv_checks + full.counters.umkdv_checks;
    const bool umkdv_ok = !has_failure({&carrier, &unit, &full}, "umkdv") && umkdv == euler_steps;
    report(6, "u-mKdV residual and carrier load identity",
           {umkdv_ok, std::to_string(umkdv) + " of " + std::to_string(euler_steps) +
                          " euler steps checked, residual 0 and Zbar_n = sum_{j<n}(U_j - U'_j)"},
           failures);

    report(7, "Euler N-soliton solution", euler_solutions(), failures);
    report(8, "tau-function particular solution", tau_solutions(), failures);
    report(9, "free soliton speed min(Q0, M)", free_soliton_speed(), failures);

    std::string rendering;
    report(10, "alternating 3/5 boxes, M_t = 6, 3 solitons, both representations", alternating_example(rendering), failures);
    std::cout << rendering;
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance suite aborted: " << e.what() << '\n';
    return 1;
  }
  std::cout << (failures == 0 ? "all 10 criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
