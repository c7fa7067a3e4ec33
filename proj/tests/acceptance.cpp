// Acceptance suite: one PASS/FAIL line per criterion.
//
//   mincos_acceptance [--allow-fail 6,9] [--only 3]
//
// The exit status is nonzero when a criterion fails that is not listed in
// --allow-fail. Allowed failures still print FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mincos/accel.hpp"
#include "mincos/bench.hpp"
#include "mincos/driver.hpp"
#include "mincos/gallery.hpp"
#include "mincos/matrix_market.hpp"
#include "mincos/mincos.hpp"
#include "mincos/mincos_ls.hpp"
#include "mincos/stea.hpp"
#include "test_support.hpp"

namespace {

using namespace mincos;
using testing::LineMerit;
using testing::Mat;
using testing::to_eigen;

// Tolerances, pinned.
constexpr double kSphereTol = 1e-10;       // x sqrt(n)
constexpr double kMonotoneSlack = 1e-14;
constexpr double kTerminalEps = 1e-10;     // run tolerance for the descent checks
constexpr double kStationaryTol = 1e-6;    // |phi'(1)| / |phi'(0)|
constexpr double kGoldenTol = 1e-8;        // relative
constexpr double kTStarTol = 1e-10;
constexpr double kEquivTol = 1e-10;        // elementwise
constexpr double kInverseTol = 1e-4;       // Poisson2D, relative Frobenius
constexpr double kRectInverseTol = 1e-8;   // 4 x 2 example
constexpr double kMatrixKernelTol = 1e-12;
constexpr double kScalarKernelTol = 1e-10;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string log; // printed only on failure
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string sci(double v) {
    return fmt("%.3e", v);
}

std::string history_csv(const RunResult& r) {
    std::ostringstream out;
    bench::write_history_csv(out, r.history);
    return out.str();
}

// ---------------------------------------------------------------------------

Outcome sphere_invariant() {
    Outcome o;
    Rng rng(1001);
    double worst = 0.0;
    std::size_t steps = 0;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 49); // 2..50
        const SparseOp a = testing::random_spd(n, rng, 1e3);
        const Mat g = to_eigen(a);
        MinCosSolver s(a);
        for (int k = 0; k < 100; ++k) {
            try {
                if (has(s.step().flags, Flag::zero_direction)) break;
            } catch (const StagnationError&) {
                break;
            }
            ++steps;
            const double dev = std::abs((to_eigen(s.iterate()) * g).norm() - std::sqrt(double(n))) /
                               std::sqrt(double(n));
            worst = std::max(worst, dev);
        }
    }
    double worst_ls = 0.0;
    std::size_t steps_ls = 0;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 20);            // 1..20
        const std::size_t m = n + static_cast<std::size_t>(rng.uniform() * (31 - n));      // n..30
        const SparseOp a = testing::random_full_rank(m, n, rng);
        const Mat ea = to_eigen(a);
        MinCosLSSolver s(a);
        for (int k = 0; k < 100; ++k) {
            try {
                if (has(s.step().flags, Flag::zero_direction)) break;
            } catch (const StagnationError&) {
                break;
            }
            ++steps_ls;
            const Mat img = (ea * to_eigen(s.iterate())).transpose() * ea;
            worst_ls = std::max(worst_ls, std::abs(img.norm() - std::sqrt(double(n))) / std::sqrt(double(n)));
        }
    }
    o.pass = worst <= kSphereTol && worst_ls <= kSphereTol && steps > 0 && steps_ls > 0;
    o.detail = "max |‖XA‖-√n|/√n = " + sci(worst) + " over " + std::to_string(steps) +
               " steps; least-squares " + sci(worst_ls) + " over " + std::to_string(steps_ls) +
               " steps (tol " + sci(kSphereTol) + ")";
    return o;
}

Outcome monotonicity() {
    Outcome o;
    Rng rng(1002);
    std::vector<SparseOp> instances;
    for (int i = 0; i < 20; ++i)
        instances.push_back(testing::random_spd(4 + static_cast<std::size_t>(rng.uniform() * 27), rng, 1e3));
    instances.push_back(gallery::poisson2d(6));
    instances.push_back(SparseOp::from_dense(gallery::lehmer(12)));
    instances.push_back(gallery::wathen(2, 1));

    std::size_t checked = 0, bad_mono = 0, bad_phi0 = 0, bad_dphi = 0, bad_phi1 = 0;
    double worst_rise = 0.0;
    for (const SparseOp& a : instances) {
        const DenseMat g = a.to_dense();
        MinCosSolver s(a);
        for (int k = 0; k < 80; ++k) {
            // Terminal iterates (merit <= eps) end a run; the line checks stop there.
            if (s.merit() <= kTerminalEps || s.at_solution()) break;
            const LineMerit f(s.iterate(), s.direction(), g);
            double alpha;
            try {
                alpha = s.optimal_alpha();
            } catch (const StagnationError&) {
                break;
            }
            const long double f0 = f(0);
            const long double phi0 = f(0) - f0;
            const long double h = 1e-4L * alpha;
            const long double dphi0 = (f(h) - f(-h)) / (2 * h);
            const long double phi1 = f(alpha) - f0;
            ++checked;
            if (phi0 != 0.0L) ++bad_phi0;
            if (!(dphi0 < 0.0L)) ++bad_dphi;
            if (!(phi1 < 0.0L)) ++bad_phi1;

            const double before = s.merit();
            s.step();
            const double rise = s.merit() - before;
            worst_rise = std::max(worst_rise, rise);
            if (rise > kMonotoneSlack) ++bad_mono;
        }
    }
    o.pass = bad_mono == 0 && bad_phi0 == 0 && bad_dphi == 0 && bad_phi1 == 0 && checked > 0;
    o.detail = std::to_string(instances.size()) + " instances, " + std::to_string(checked) +
               " iterates: merit rises > 1e-14: " + std::to_string(bad_mono) +
               " (max rise " + sci(worst_rise) + "), phi(0)!=0: " + std::to_string(bad_phi0) +
               ", phi'(0)>=0: " + std::to_string(bad_dphi) + ", phi(1)>=0: " + std::to_string(bad_phi1);
    return o;
}

Outcome steplength_optimality() {
    Outcome o;
    Rng rng(1003);
    double worst_stat = 0.0, worst_golden = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const SparseOp a = testing::random_spd(8, rng, 1e3);
        MinCosSolver s(a);
        const int warmup = static_cast<int>(rng.uniform() * 5);
        for (int k = 0; k < warmup; ++k) s.step();
        const double alpha = s.optimal_alpha();
        const LineMerit f(s.iterate(), s.direction(), a.to_dense());
        // Central differences in t, phi(t) = F(X + t alpha D) - F(X).
        const long double h = 1e-4L;
        auto dphi = [&](long double t) { return (f((t + h) * alpha) - f((t - h) * alpha)) / (2 * h); };
        const double rel = static_cast<double>(std::abs(dphi(1.0L)) / std::abs(dphi(0.0L)));
        worst_stat = std::max(worst_stat, rel);

        const long double ref = testing::golden_section(f, 0.0L, 4.0L * alpha, 1e-16L);
        worst_golden = std::max(worst_golden, std::abs(alpha - static_cast<double>(ref)) / alpha);
    }
    o.pass = worst_stat <= kStationaryTol && worst_golden <= kGoldenTol;
    o.detail = "50 SPD n=8: max |phi'(1)|/|phi'(0)| = " + sci(worst_stat) + " (tol " +
               sci(kStationaryTol) + "), max |alpha - golden|/alpha = " + sci(worst_golden) +
               " (tol " + sci(kGoldenTol) + ")";
    return o;
}

Outcome tstar_roots() {
    Outcome o;
    Rng rng(1004);
    std::size_t returned = 0, mono_bad = 0, steps = 0;
    double worst = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        const SparseOp a = testing::random_spd(8, rng, 1e3);
        const DenseMat g = a.to_dense();
        MinCosSolver s(a);
        AccelHook hook(AccelHook::Mode::random, 500 + inst, 0.5, true);
        for (int k = 0; k < 30 && !s.at_solution(); ++k) {
            double alpha;
            try {
                alpha = s.optimal_alpha();
            } catch (const StagnationError&) {
                break;
            }
            if (const auto t = t_star(s.factors(), alpha)) {
                ++returned;
                const LineMerit f(s.iterate(), s.direction(), g);
                worst = std::max(worst, static_cast<double>(std::abs(f(*t * alpha) - f(0))));
            }
            const double before = s.merit();
            s.step(hook.steplength(s, alpha).alpha);
            ++steps;
            if (s.merit() > before + kMonotoneSlack) ++mono_bad;
        }
    }
    o.pass = returned > 0 && worst <= kTStarTol && mono_bad == 0;
    o.detail = "t* returned " + std::to_string(returned) + " times, max |phi(t*)| = " + sci(worst) +
               " (tol " + sci(kTStarTol) + "); t*-mode steps " + std::to_string(steps) +
               ", merit increases: " + std::to_string(mono_bad);
    return o;
}

Outcome ls_equivalence() {
    Outcome o;
    Rng rng(1005);
    double worst = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        const SparseOp a = testing::random_full_rank(12, 8, rng);
        const Mat ea = to_eigen(a);
        const SparseOp ata = SparseOp::from_dense(testing::from_eigen(ea.transpose() * ea));
        const DenseMat x0 = MinCosLSSolver::initial_scale(a) * DenseMat::identity(8);
        MinCosLSSolver ls(a, x0);
        MinCosSolver spd(ata, x0, true);
        for (int k = 0; k < 20; ++k) {
            ls.step();
            spd.step();
            worst = std::max(worst, (to_eigen(ls.iterate()) - to_eigen(spd.iterate())).cwiseAbs().maxCoeff());
        }
    }
    o.pass = worst <= kEquivTol;
    o.detail = "10 x (12x8), 20 iterations: max elementwise difference " + sci(worst) + " (tol " +
               sci(kEquivTol) + ")";
    return o;
}

Outcome convergence_to_inverse() {
    Outcome o;
    const SparseOp a = gallery::poisson2d(10);
    SolverConfig cfg;
    cfg.eps = 1e-10;
    cfg.maxiter = 10 * 100;
    const RunResult r = run_spd(a, cfg);
    const Mat inv = to_eigen(a).inverse();
    const double err = (to_eigen(r.x) - inv).norm() / inv.norm();
    const bool poisson_ok = r.status == RunStatus::converged && r.final_merit <= cfg.eps &&
                            r.iterations <= cfg.maxiter && err <= kInverseTol;

    const SparseOp rect(4, 2, {{0, 0, 1.0}, {1, 1, 2.0}});
    SolverConfig ls_cfg;
    ls_cfg.eps = 1e-16;
    ls_cfg.maxiter = 200;
    const RunResult q = run_ls(rect, ls_cfg);
    const double rect_err = std::max({std::abs(q.x(0, 0) - 1.0), std::abs(q.x(1, 1) - 0.25),
                                      std::abs(q.x(0, 1)), std::abs(q.x(1, 0))});
    const bool rect_ok = rect_err <= kRectInverseTol;

    o.pass = poisson_ok && rect_ok;
    o.detail = "Poisson2D n=100: " + to_string(r.status) + " at k=" + std::to_string(r.iterations) +
               " (limit 1000), merit " + sci(r.final_merit) + ", ‖X-A⁻¹‖/‖A⁻¹‖ = " + sci(err) +
               " (tol " + sci(kInverseTol) + "); 4x2: max |X - diag(1,1/4)| = " + sci(rect_err) +
               " (tol " + sci(kRectInverseTol) + ")";
    if (!o.pass) o.log = history_csv(r);
    return o;
}

Outcome stea_kernels() {
    Outcome o;
    Rng rng(1007);
    DenseMat s(5, 5), d(5, 5);
    for (auto& v : s.values()) v = rng.normal();
    for (auto& v : d.values()) v = rng.normal();
    std::vector<DenseMat> seq;
    for (int n = 0; n < 6; ++n) seq.push_back(axpy(std::pow(0.5, n), d, s));
    const EpsilonTable table = stea2_table(seq, LinearFunctional());
    double worst_m = 0.0;
    std::size_t entries = 0;
    for (const auto& e : table.matrix_cols.at(1)) {
        if (!e) {
            worst_m = INFINITY;
            continue;
        }
        ++entries;
        worst_m = std::max(worst_m, (to_eigen(*e) - to_eigen(s)).cwiseAbs().maxCoeff());
    }

    std::vector<double> sc;
    for (int n = 0; n < 9; ++n) sc.push_back(1.0 + std::pow(0.6, n) + std::pow(0.2, n));
    const ScalarEpsilonTable st = scalar_epsilon(sc);
    double worst_s = 0.0;
    std::size_t scalar_entries = 0;
    for (std::size_t n = 0; n + 4 < sc.size(); ++n) {
        const auto e = st.at(4, n);
        if (!e) {
            worst_s = INFINITY;
            continue;
        }
        ++scalar_entries;
        worst_s = std::max(worst_s, std::abs(*e - 1.0));
    }
    o.pass = entries > 0 && worst_m <= kMatrixKernelTol && scalar_entries > 0 && worst_s <= kScalarKernelTol;
    o.detail = "rank-1 matrix kernel, column 2 (" + std::to_string(entries) + " entries): max error " +
               sci(worst_m) + " (tol " + sci(kMatrixKernelTol) + "); rank-2 scalar kernel, column 4 (" +
               std::to_string(scalar_entries) + " entries): " + sci(worst_s) + " (tol " +
               sci(kScalarKernelTol) + ")";
    return o;
}

Outcome acceleration_orderings() {
    Outcome o;
    const SparseOp poisson = gallery::poisson2d(10);
    SolverConfig cfg;
    cfg.eps = 1e-10;
    cfg.maxiter = 1000;
    const RunResult plain = run_spd(poisson, cfg);

    SolverConfig stea_cfg = cfg;
    stea_cfg.accel = AccelMode::stea2;
    stea_cfg.ncycle = 8;
    stea_cfg.mcol = 8;
    const RunResult stea = run_spd(poisson, stea_cfg);

    std::vector<std::size_t> random_its;
    std::vector<RunResult> random_runs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SolverConfig rc = cfg;
        rc.accel = AccelMode::random;
        rc.eta = 0.5;
        rc.seed = seed;
        random_runs.push_back(run_spd(poisson, rc));
        random_its.push_back(random_runs.back().status == RunStatus::converged
                                 ? random_runs.back().iterations
                                 : cfg.maxiter + 1);
    }
    std::vector<std::size_t> sorted = random_its;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * double(sorted[4] + sorted[5]);

    SolverConfig lc;
    lc.eps = 1e-6;
    lc.maxiter = 450;
    lc.accel = AccelMode::random;
    lc.seed = 1;
    const RunResult lehmer = run_spd(SparseOp::from_dense(gallery::lehmer(20)), lc);

    SolverConfig ac;
    ac.eps = 1e-6;
    ac.maxiter = 400;
    ac.accel = AccelMode::abbmin;
    ac.tau = 0.8;
    ac.window = 10;
    const RunResult abb = run_spd(poisson, ac);

    const bool plain_ok = plain.status == RunStatus::converged;
    const bool stea_ok = stea.status == RunStatus::converged && stea.iterations < plain.iterations;
    const bool random_ok = median < double(plain.iterations);
    const bool lehmer_ok = lehmer.status == RunStatus::converged;
    const bool abb_ok = abb.status == RunStatus::converged;
    o.pass = plain_ok && stea_ok && random_ok && lehmer_ok && abb_ok;

    o.detail = "Poisson2D n=100 eps=1e-10: plain " + std::to_string(plain.iterations) + ", STEA2(8,8) " +
               std::to_string(stea.iterations) + " (" + to_string(stea.status) + "), random median " +
               fmt("%.1f", median) + " over seeds 1-10; Lehmer n=20 random: " + to_string(lehmer.status) +
               " at k=" + std::to_string(lehmer.iterations) + "/450; ABBmin eps=1e-6: " +
               to_string(abb.status) + " at k=" + std::to_string(abb.iterations) + "/400";
    if (!o.pass) {
        auto section = [&](const std::string& name, const RunResult& r) {
            o.log += "--- " + name + "\n" + history_csv(r);
        };
        section("plain", plain);
        section("stea2", stea);
        for (std::size_t i = 0; i < random_runs.size(); ++i)
            section("random seed " + std::to_string(i + 1), random_runs[i]);
        section("lehmer random", lehmer);
        section("abbmin", abb);
    }
    return o;
}

Outcome data_plumbing() {
    Outcome o;
    const char* env = std::getenv("MINCOS_DATA_DIR");
    const std::filesystem::path dir = env ? env : "data";
    std::vector<std::string> parts;
    bool ok = true;
    for (const char* name : {"illc1850", "well1850"}) {
        const auto path = dir / (std::string(name) + ".mtx");
        try {
            const SparseOp a = read_matrix_market(path);
            const bool dims = a.rows() == 1850 && a.cols() == 712;
            ok &= dims;
            parts.push_back(std::string(name) + " (" + std::to_string(a.rows()) + "," +
                            std::to_string(a.cols()) + ")");
        } catch (const std::exception& e) {
            ok = false;
            parts.push_back(std::string(name) + " unreadable: " + e.what());
        }
    }
    const std::size_t w30 = gallery::wathen(30).rows();
    const std::size_t w50 = gallery::wathen(50).rows();
    ok &= w30 == 2821 && w50 == 7701;
    parts.push_back("wathen(30) n=" + std::to_string(w30) + ", wathen(50) n=" + std::to_string(w50));

    bool round_trip = true;
    Rng rng(1009);
    std::vector<SparseOp> samples{gallery::wathen(3, 2), gallery::poisson3d(3),
                                  SparseOp::from_dense(gallery::randn_mat(9, 5, 4))};
    DenseMat extreme(4, 3);
    for (auto& v : extreme.values()) v = rng.normal() * std::pow(10.0, rng.uniform(-300, 300));
    samples.push_back(SparseOp::from_dense(extreme));
    for (const SparseOp& a : samples) {
        std::stringstream buf;
        write_matrix_market(buf, a);
        round_trip &= read_matrix_market(buf) == a;
    }
    ok &= round_trip;
    parts.push_back(std::string("round trip ") + (round_trip ? "exact" : "MISMATCH"));

    o.pass = ok;
    for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
    return o;
}

std::string strip_elapsed(const std::string& csv) {
    std::ostringstream out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        std::istringstream cells(line);
        std::string c;
        for (int col = 0; std::getline(cells, c, ','); ++col)
            if (col != 4) out << c << ',';
        out << '\n';
    }
    return out.str();
}

Outcome determinism() {
    Outcome o;
    struct Scenario {
        std::string name;
        gallery::MatrixSpec spec;
        SolverConfig cfg;
        bench::Mode mode;
    };
    std::vector<Scenario> scenarios;
    {
        SolverConfig c;
        c.eps = 1e-10;
        c.accel = AccelMode::random;
        c.seed = 1;
        scenarios.push_back({"poisson2d g=10 random", {gallery::MatrixKind::poisson2d, 10, {}, {}, {}}, c, bench::Mode::spd});
    }
    {
        SolverConfig c;
        c.eps = 1e-6;
        c.maxiter = 450;
        c.accel = AccelMode::abbmin;
        c.seed = 2;
        scenarios.push_back({"lehmer n=20 abbmin", {gallery::MatrixKind::lehmer, 20, {}, {}, {}}, c, bench::Mode::spd});
    }
    {
        SolverConfig c;
        c.eps = 1e-6;
        c.maxiter = 5000;
        c.accel = AccelMode::stea2;
        c.ncycle = 30;
        c.mcol = 8;
        scenarios.push_back({"randn 100x80 ls stea2", {gallery::MatrixKind::randn, 80, 100, {}, 1}, c, bench::Mode::ls});
    }
    std::size_t identical = 0;
    for (const auto& sc : scenarios) {
        const auto a = bench::run_scenario(sc.spec, sc.cfg, sc.mode);
        const auto b = bench::run_scenario(sc.spec, sc.cfg, sc.mode);
        const bool same = a.run && b.run && strip_elapsed(history_csv(*a.run)) == strip_elapsed(history_csv(*b.run)) &&
                          !a.run->history.empty();
        if (same) ++identical;
        o.detail += (o.detail.empty() ? "" : "; ") + sc.name + (same ? " identical" : " DIFFERS") + " (" +
                    std::to_string(a.run ? a.run->history.size() : 0) + " rows)";
    }
    o.pass = identical == scenarios.size();
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> check;
};

std::set<int> parse_ids(const std::string& list) {
    std::set<int> ids;
    std::istringstream in(list);
    for (std::string tok; std::getline(in, tok, ',');)
        if (!tok.empty()) ids.insert(std::stoi(tok));
    return ids;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> allowed, only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--allow-fail" && i + 1 < argc) {
            allowed = parse_ids(argv[++i]);
        } else if (arg == "--only" && i + 1 < argc) {
            only = parse_ids(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0] << " [--allow-fail 6,9] [--only 1,2]\n";
            return 64;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "sphere invariant", sphere_invariant},
        {2, "monotonicity and descent", monotonicity},
        {3, "steplength optimality", steplength_optimality},
        {4, "t* root property", tstar_roots},
        {5, "least-squares iteration equals MinCos on A^T A", ls_equivalence},
        {6, "convergence to the inverse", convergence_to_inverse},
        {7, "STEA2 kernel exactness", stea_kernels},
        {8, "acceleration orderings", acceleration_orderings},
        {9, "data plumbing", data_plumbing},
        {10, "determinism", determinism},
    };

    int unexpected = 0, failed = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const bool tolerated = !o.pass && allowed.count(c.id);
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << c.title
                  << " - " << o.detail << (tolerated ? " [known failure]" : "") << std::endl;
        if (!o.pass) {
            ++failed;
            if (!tolerated) ++unexpected;
            if (!o.log.empty()) std::cout << o.log;
        }
    }
    std::cout << "summary: " << failed << " failed, " << unexpected << " unexpected" << std::endl;
    return unexpected ? 1 : 0;
}
