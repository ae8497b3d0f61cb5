// Batch front end: subcommands, config parsing, CSV/JSON emission and the
// validation pipelines.  Exit codes: 0 success, 1 validation failure
// (an acceptance threshold missed), 2 usage/config error.
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tpwkb/airy.hpp"
#include "tpwkb/approximant.hpp"
#include "tpwkb/blowup.hpp"
#include "tpwkb/eigen.hpp"
#include "tpwkb/elliptic.hpp"
#include "tpwkb/errors.hpp"
#include "tpwkb/hyperbolic.hpp"
#include "tpwkb/problem.hpp"
#include "tpwkb/reference.hpp"
#include "tpwkb/series.hpp"
#include "tpwkb/validate.hpp"

namespace {

using nlohmann::json;
using namespace tpwkb;

constexpr int EXIT_VALIDATION = 1;
constexpr int EXIT_USAGE = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- output ----------------------------------------------------------------
// CSV: '.' decimal, 17 significant digits, header row; JSON mirrors the CSV
// columns so the two formats are interchangeable.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> footer;  // e.g. fitted slope

    void write_csv(std::ostream& os) const {
        for (size_t j = 0; j < columns.size(); ++j)
            os << columns[j] << (j + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows)
            for (size_t j = 0; j < row.size(); ++j)
                os << fmt17(row[j]) << (j + 1 < row.size() ? "," : "\n");
        for (const auto& [k, v] : footer) os << "# " << k << "," << fmt17(v) << "\n";
    }
    void write_json(std::ostream& os) const {
        json out;
        out["columns"] = columns;
        out["rows"] = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (double v : row) r.push_back(v);
            out["rows"].push_back(r);
        }
        for (const auto& [k, v] : footer) out[k] = v;
        os << out.dump(2) << "\n";
    }
    void write(const std::string& format, const std::string& path) const {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw usage_error("cannot open output file: " + path);
            os = &file;
        }
        if (format == "csv") write_csv(*os);
        else if (format == "json") write_json(*os);
        else throw usage_error("unknown output format: " + format);
    }
};

// ---- threading ---------------------------------------------------------------
// Sweeps fan out to worker threads; TPWKB_THREADS caps the pool.  Results are
// written by index, so assembly is order-preserving regardless of scheduling.
int thread_count() {
    if (const char* s = std::getenv("TPWKB_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h > 0 ? static_cast<int>(h) : 1;
}

template <class F>
void parallel_for(int n, const F& f) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---- selftest plumbing -------------------------------------------------------
struct SelfTest {
    int failures = 0;
    void check(const std::string& what, bool ok) {
        std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << what << "\n";
        if (!ok) ++failures;
    }
    void close(const std::string& what, double got, double want, double tol) {
        check(what + " (got " + fmt17(got) + ", want " + fmt17(want) + ")",
              std::abs(got - want) <= tol);
    }
};

ProblemSpec load_problem(const std::string& path) {
    if (path.empty()) throw usage_error("--problem is required");
    try {
        return ProblemSpec::from_json_file(path);
    } catch (const std::exception& e) {
        throw usage_error(std::string("cannot load problem: ") + e.what());
    }
}

std::vector<double> load_well(const std::string& path) {
    if (path.empty()) throw usage_error("--well is required");
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open well file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw usage_error(std::string("invalid well JSON: ") + e.what());
    }
    if (!j.contains("v_poly") || !j["v_poly"].is_array())
        throw usage_error("well JSON must contain a \"v_poly\" array");
    std::vector<double> v;
    for (const auto& c : j["v_poly"]) v.push_back(c.get<double>());
    return v;
}

// ==== airy-table ===============================================================
int selftest_airy() {
    SelfTest st;
    double worst_w = 0.0;
    for (double x = -12.0; x <= 12.0; x += 0.25)
        worst_w = std::max(worst_w, std::abs(airy_eval(x).wronskian() - 1.0 / M_PI));
    st.close("Wronskian Ai Bi' - Ai' Bi = 1/pi on [-12, 12]", worst_w, 0.0, 1e-12);
    AiryQuad z = airy_eval(0.0);
    double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    st.close("Ai(0) closed form", z.ai, ai0, 1e-14);
    st.close("Bi(0) = sqrt(3) Ai(0)", z.bi, std::sqrt(3.0) * ai0, 1e-14);
    // (M, theta) modulus/phase against the direct evaluation at x = 1
    auto [m, th] = airy_osc(1.0);
    AiryQuad q = airy_eval(-1.0);
    st.close("airy_osc(1) modulus", m * std::cos(th), q.ai, 1e-10);
    st.close("airy_osc(1) phase", -m * std::sin(th), q.bi, 1e-10);
    return st.failures;
}

int cmd_airy_table(double from, double to, double step, const std::string& format,
                   const std::string& out_path) {
    if (!(step > 0.0)) throw usage_error("--step must be positive");
    if (to < from) throw usage_error("--to must be >= --from");
    Table t;
    t.columns = {"x", "ai", "aip", "bi", "bip", "wronskian"};
    int n = static_cast<int>(std::floor((to - from) / step + 1e-9));
    for (int i = 0; i <= n; ++i) {
        double x = from + i * step;
        AiryQuad q = airy_eval(x);
        t.rows.push_back({x, q.ai, q.aip, q.bi, q.bip, q.wronskian()});
    }
    t.write(format, out_path);
    return 0;
}

// ==== series ===================================================================
int selftest_series() {
    SelfTest st;
    // jet arithmetic: sqrt(1 + t) at 0 and sqrt(4)
    DJet one_plus_t(0.0, {1.0, 1.0});
    DJet s = jet_sqrt(one_plus_t.truncated(2));
    st.close("jet sqrt(1+t) coeff 0", s[0], 1.0, 1e-15);
    st.close("jet sqrt(1+t) coeff 1", s[1], 0.5, 1e-15);
    st.close("jet sqrt(1+t) coeff 2", s[2], -0.125, 1e-15);
    DJet four = DJet::constant(0.0, 4.0, 1);
    DJet s4 = jet_sqrt(four);
    st.close("jet sqrt(4) coeff 0", s4[0], 2.0, 1e-15);
    st.close("jet sqrt(4) coeff 1", s4[1], 0.0, 1e-15);
    // hyperbolic Riccati, mu = t at t = -4: h0 = 2, h1 = 1/16
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    EpsSeries h = hyp_riccati_coeffs(lin, -4.0, 1);
    st.close("mu=t, t=-4: h0", h.coeffs[0].real(), 2.0, 1e-14);
    st.close("mu=t, t=-4: h1", h.coeffs[1].real(), 1.0 / 16.0, 1e-14);
    // b-series coefficients
    EpsSeries b = b0_coeffs(2);
    st.close("b1 = -i/4", std::abs(b.coeffs[1] - std::complex<double>(0.0, -0.25)), 0.0, 1e-15);
    st.close("b2 = -7/32", std::abs(b.coeffs[2] - std::complex<double>(-7.0 / 32.0, 0.0)), 0.0,
             1e-15);
    // even/odd identity at order 0 is identically zero
    ProblemSpec quad = ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5);
    st.close("even/odd order-0 residual", even_odd_check(quad, 1.0, 0)[0], 0.0, 0.0);
    // Gevrey fit on synthetic coefficients
    EpsSeries fact, fact2;
    double c = 1.0, c2 = 1.0;
    for (int m = 0; m <= 12; ++m) {
        fact.coeffs.push_back(c);
        fact2.coeffs.push_back(c2);
        c *= m + 1;
        c2 *= 2.0 * (m + 1);
    }
    auto [a1v, b1v] = gevrey_fit(fact);
    auto [a2v, b2v] = gevrey_fit(fact2);
    st.close("gevrey fit c_m = m!: a", a1v, 1.0, 1e-6);
    st.close("gevrey fit c_m = m!: b", b1v, 1.0, 1e-6);
    st.close("gevrey fit c_m = 2^m m!: b", b2v, 2.0, 1e-6);
    return st.failures;
}

int cmd_series(const std::string& problem, double t, const std::string& side, int order,
               const std::string& format, const std::string& out_path) {
    ProblemSpec p = load_problem(problem);
    if (order < 0) throw usage_error("--order must be >= 0");
    Table tab;
    tab.columns = {"m", "re", "im"};
    EpsSeries s;
    if (side == "elliptic") {
        if (!(t > 0.0)) throw usage_error("elliptic side requires t > 0");
        s = ell_riccati_coeffs(p, t, order);
    } else if (side == "hyperbolic") {
        if (!(t < 0.0)) throw usage_error("hyperbolic side requires t < 0");
        s = hyp_riccati_coeffs(p, t, order);
    } else {
        throw usage_error("--side must be elliptic or hyperbolic");
    }
    for (int m = 0; m <= s.order(); ++m)
        tab.rows.push_back({static_cast<double>(m), s.coeffs[m].real(), s.coeffs[m].imag()});
    tab.write(format, out_path);
    return 0;
}

// ==== approx ===================================================================
int selftest_approx() {
    SelfTest st;
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    // mu = t: the subtracted phases vanish, so the approximant is exactly the
    // Airy pair on all three intervals
    const double eps = 1e-2, e13 = std::cbrt(eps), e23 = e13 * e13;
    double worst = 0.0;
    for (double t : {-0.3, -0.15, -0.02, 0.0, 0.02, 0.15, 0.3}) {
        ApproxValue a = uniform_wu_solution(lin, eps, 0.2, t, 0.3);
        AiryQuad q = airy_eval(-t / e23);
        double x = std::exp(a.logmag) * a.xm, y = std::exp(a.logmag) * a.ym;
        double scale = std::hypot(q.ai, q.aip);
        worst = std::max(worst, std::hypot(x - q.ai, (y + e13 * q.aip) / e13) / scale);
    }
    st.close("mu = t: approximant equals the Airy pair", worst, 0.0, 1e-8);
    // Phi = pi/4 makes the sine vanish: direction (1, 0)
    double eps_pi4 = (2.0 / 3.0) / (M_PI / 4.0);  // Phi = eps^{-1} (2/3) nu^{3/2}, nu = 1
    ProblemSpec lin1 = ProblemSpec::from_mu({0.0, 1.0}, 1.0);
    Direction2 d = wu_direction(lin1, 1.0, eps_pi4);
    st.close("Phi = pi/4 direction x", d.x, 1.0, 1e-12);
    st.close("Phi = pi/4 direction y", d.y, 0.0, 1e-12);
    // synthetic direction stream: fit recovers known corrections
    std::vector<DirectionSample> samples;
    std::vector<double> rho = {0.3, -0.1}, phi1 = {0.2, 0.05}, phi2 = {-0.15, 0.1};
    for (int k = 0; k < 8; ++k) {
        double e = 0.05 * std::pow(0.7, k), e3 = std::cbrt(e), e23s = e3 * e3;
        double r = rho[0] + rho[1] * e3, f1 = phi1[0] + phi1[1] * e3, f2 = phi2[0] + phi2[1] * e3;
        double theta = 1.3 / e, sqmu = 0.9;
        double d1 = std::cos(theta + e23s * f1);
        double d2 = -sqmu * (1.0 + e23s * r) * std::sin(theta + e23s * f2);
        double n = std::hypot(d1, d2);
        samples.push_back({e, theta, sqmu, d1 / n, d2 / n});
    }
    PhaseFit fit = fit_phase_corrections(samples, 1);
    double fit_err = std::max({std::abs(fit.rho[0] - rho[0]), std::abs(fit.rho[1] - rho[1]),
                               std::abs(fit.phi1[0] - phi1[0]), std::abs(fit.phi1[1] - phi1[1]),
                               std::abs(fit.phi2[0] - phi2[0]), std::abs(fit.phi2[1] - phi2[1])});
    st.close("phase fit recovers synthetic corrections", fit_err, 0.0, 1e-6);
    // hyperbolic slow-manifold slope: mu = t, t = -1, N = 1 -> 1 + eps/4
    EpsSeries h = hyp_riccati_coeffs(lin, -1.0, 1);
    st.close("W^u slope mu=t, t=-1, eps=0.01", (h.coeffs[0] + 0.01 * h.coeffs[1]).real(), 1.0025,
             1e-14);
    st.close("eps = 0 slope equals sqrt(-mu)", h.coeffs[0].real(), 1.0, 1e-15);
    // elliptic diagonalization at eps = 0, mu = t, t = 1: [[1, 1], [i, -i]]
    Diag2 dg = diagonalize(lin, 1.0, 0.0, 0);
    using cplx = std::complex<double>;
    double dmat = std::max({std::abs(dg.m[0][0] - cplx(1.0)), std::abs(dg.m[0][1] - cplx(1.0)),
                            std::abs(dg.m[1][0] - cplx(0.0, 1.0)),
                            std::abs(dg.m[1][1] - cplx(0.0, -1.0))});
    st.close("eps = 0 diagonalizer", dmat, 0.0, 1e-14);
    double dinv = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx prod = dg.m[i][0] * dg.inv[0][j] + dg.m[i][1] * dg.inv[1][j];
            dinv = std::max(dinv, std::abs(prod - (i == j ? cplx(1.0) : cplx(0.0))));
        }
    st.close("inverse * matrix = identity", dinv, 0.0, 1e-13);
    // zero elapsed interval: propagation is the identity
    OscState s0{0.7, -0.3};
    OscState s1 = lg_propagate(lin, 0.25, s0, 0.25, 1e-2);
    st.close("t = t0 propagation identity", std::hypot(s1.x - s0.x, s1.y - s0.y), 0.0, 1e-13);
    return st.failures;
}

int cmd_approx(const std::string& problem, double eps, double delta, int grid, double nu_opt,
               const std::string& format, const std::string& out_path) {
    ProblemSpec p = load_problem(problem);
    if (!(eps > 0.0)) throw usage_error("--eps must be positive");
    if (!(delta > 0.0)) throw usage_error("--delta must be positive");
    if (grid < 2) throw usage_error("--grid must be >= 2");
    double nu = nu_opt > 0.0 ? nu_opt : p.nu0;
    UniformApproximant ua(p, eps, delta, nu);
    Table t;
    t.columns = {"t", "x", "y", "logmag", "interval"};
    for (int i = 0; i < grid; ++i) {
        double tt = i == grid - 1 ? nu : -nu + 2.0 * nu * i / (grid - 1);
        ApproxValue a = ua.eval(tt);
        t.rows.push_back({tt, a.xm, a.ym, a.logmag, static_cast<double>(a.interval)});
    }
    t.write(format, out_path);
    return 0;
}

// ==== charts-check =============================================================
int selftest_charts() {
    SelfTest st;
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    // exact substitutions
    PhysPoint p1 = to_physical({Chart::Tplus, 1.0, 0.0, 0.3, 1.0});
    st.check("Tplus substitution (1, 0, 0.3, 1) -> (1, 0, 0.09, 0.027)",
             p1.x == 1.0 && p1.y == 0.0 && std::abs(p1.t - 0.09) < 1e-17 &&
                 std::abs(p1.eps - 0.027) < 1e-17);
    PhysPoint p2 = to_physical({Chart::Escale, 1.0, 2.0, 0.1, -1.0});
    st.check("Escale substitution (1, 2, -1, 0.1) -> (1, 0.2, -0.01, 0.001)",
             p2.x == 1.0 && std::abs(p2.y - 0.2) < 1e-17 && std::abs(p2.t + 0.01) < 1e-17 &&
                 std::abs(p2.eps - 0.001) < 1e-17);
    PhysPoint p3 = to_physical({Chart::Tminus, 0.4, 7.0, 0.0, 3.0});
    st.check("r = 0 blows down to (x, 0, 0, 0)",
             p3.x == 0.4 && p3.y == 0.0 && p3.t == 0.0 && p3.eps == 0.0);
    // chart transitions
    ChartPoint c1 = transition({Chart::Escale, 1.0, 1.0, 0.1, -1.0}, Chart::Tminus);
    st.check("Escale -> Tminus at t2 = -1",
             std::abs(c1.r - 0.1) < 1e-15 && std::abs(c1.y - 1.0) < 1e-15 &&
                 std::abs(c1.s - 1.0) < 1e-15);
    ChartPoint c2 = transition({Chart::Escale, 1.0, 1.0, 0.1, 4.0}, Chart::Tplus);
    st.check("Escale -> Tplus at t2 = 4",
             std::abs(c2.r - 0.2) < 1e-15 && std::abs(c2.y - 0.5) < 1e-15 &&
                 std::abs(c2.s - 0.125) < 1e-15);
    ChartPoint c3 = transition(c2, Chart::Escale);
    st.close("round trip Escale -> Tplus -> Escale", std::max({std::abs(c3.y - 1.0),
                                                               std::abs(c3.r - 0.1),
                                                               std::abs(c3.s - 4.0)}),
             0.0, 1e-14);
    // critical-manifold slope at eps1 = 0
    Chart1Slope sl = chart1_hu(lin, 0.3, 0.0);
    st.close("eps1 = 0 slope = sqrt(muhat(-r1^2))", sl.slope, std::sqrt(mu_hat(lin, -0.09)),
             1e-14);
    // mu = t: chart-1 solution is exactly Ai
    ChartSolution cs = chart1_solution(lin, 0.3, 1e-2);
    double z = std::pow(1e-2, -2.0 / 3.0) * 0.09;
    AiryScaled as = airy_scaled(z);
    st.close("mu = t chart-1 x = Ai", cs.xm * std::exp(cs.logmag + as.zeta), as.ai_s, 1e-10);
    // chart-3 leading order: y3C / xC -> i as eps3 -> 0
    auto [xc, yc] = xc_yc(0.02, 20);
    st.close("chart-3 ratio y/x -> i (real part)", (yc / xc).real(), 0.0, 0.05);
    st.close("chart-3 ratio y/x -> i (imag part)", (yc / xc).imag(), 1.0, 0.05);
    // mu = t: chart-3 x equals Ai (phase subtraction vanishes)
    ChartSolution c3s = chart3_solution(lin, 0.3, 1e-2);
    AiryQuad q = airy_eval(-z);
    st.close("mu = t chart-3 x = Ai", c3s.xm * std::exp(c3s.logmag), q.ai, 1e-10);
    return st.failures;
}

int cmd_charts_check(const std::string& problem, const std::string& out_path) {
    ProblemSpec p = load_problem(problem);
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ur(0.01, 0.5), ut(0.1, 5.0), ux(-2.0, 2.0);
    double worst_round = 0.0, worst_eps = 0.0;
    for (int i = 0; i < 1000; ++i) {
        ChartPoint cp{Chart::Escale, ux(rng), ux(rng), ur(rng), ut(rng)};
        // eps = r^3 epsbar is conserved by the substitution and by transitions
        double eps0 = cp.r * cp.r * cp.r;  // epsbar = 1 in Escale
        PhysPoint ph = to_physical(cp);
        worst_eps = std::max(worst_eps, std::abs(ph.eps - eps0));
        for (Chart target : {Chart::Tplus, Chart::Tminus}) {
            ChartPoint moved = cp;
            if (target == Chart::Tminus) moved.s = -moved.s;  // need t2 < 0
            ChartPoint there = transition(moved, target);
            PhysPoint ph2 = to_physical(there);
            double eps_there = there.r * there.r * there.r * there.s;
            worst_eps = std::max(worst_eps, std::abs(ph2.eps - eps_there));
            worst_eps = std::max(worst_eps, std::abs(ph2.eps - eps0));
            ChartPoint back = transition(there, Chart::Escale);
            worst_round = std::max({worst_round, std::abs(back.x - moved.x),
                                    std::abs(back.y - moved.y), std::abs(back.r - moved.r),
                                    std::abs(back.s - moved.s)});
        }
    }
    // chart-2 Airy propagation: the desingularized field at r2 = 0 transports
    // (Ai(-t2), -Ai'(-t2)) exactly; integrate and compare.
    AiryQuad q0 = airy_eval(0.0);
    std::vector<double> state = {q0.ai, -q0.aip};
    auto rhs = [&](double t2, const double* y, double* dy) {
        ChartDeriv d = desing_field(p, {Chart::Escale, y[0], y[1], 0.0, t2});
        dy[0] = d.dx;
        dy[1] = d.dy;
    };
    const double tol = 1e-12;
    dopri5(rhs, 2, 0.0, state, 2.0, tol);
    AiryQuad q2 = airy_eval(-2.0);
    double airy_err = std::hypot(state[0] - q2.ai, state[1] + q2.aip);
    bool pass = worst_round <= 1e-14 && worst_eps <= 1e-14 && airy_err <= 100.0 * tol;
    json report;
    report["roundtrip_max_error"] = worst_round;
    report["eps_conservation_max_error"] = worst_eps;
    report["chart2_airy_propagation_error"] = airy_err;
    report["integrator_tolerance"] = tol;
    report["pass"] = pass;
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw usage_error("cannot open output file: " + out_path);
        os = &file;
    }
    *os << report.dump(2) << "\n";
    return pass ? 0 : EXIT_VALIDATION;
}

// ==== validate =================================================================
int selftest_validate() {
    SelfTest st;
    // rate_fit on synthetic data
    std::vector<std::pair<double, double>> a, b;
    for (double e : {1e-1, 5e-2, 2.5e-2, 1.25e-2}) {
        a.push_back({e, std::pow(e, 2.0 / 3.0)});
        b.push_back({e, 3.0 * e});
    }
    st.close("rate fit of e = eps^{2/3}", rate_fit(a).slope, 2.0 / 3.0, 1e-12);
    st.close("rate fit of e = 3 eps", rate_fit(b).slope, 1.0, 1e-12);
    // linearity of the log-scaled integrator: doubling the state shifts
    // logmag by exactly log 2 and leaves the direction unchanged
    ProblemSpec quad = ProblemSpec::from_mu({0.0, 1.0, 0.5}, 0.5);
    LogScaledState s1 = integrate(quad, 1e-1, -0.4, 1.0, 0.5, 0.2, 1e-12);
    LogScaledState s2 = integrate(quad, 1e-1, -0.4, 2.0, 1.0, 0.2, 1e-12);
    st.close("doubling shifts logmag by log 2", s2.logmag - s1.logmag, std::log(2.0), 1e-14);
    st.close("doubling leaves the direction unchanged",
             std::hypot(s2.xhat - s1.xhat, s2.yhat - s1.yhat), 0.0, 1e-14);
    // problem-module identities
    ProblemSpec lin = ProblemSpec::from_mu({0.0, 1.0}, 0.5);
    DJet j = mu_jet(lin, -1.0, 2);
    st.check("jet of mu = t at -1", j[0] == -1.0 && j[1] == 1.0 && j[2] == 0.0);
    st.close("muhat of mu = t", mu_hat(lin, 0.37), 1.0, 0.0);
    st.close("muhat of mu = t + t^2/2 at 1", mu_hat(quad, 1.0), 1.5, 1e-15);
    st.close("action over an empty interval", action(lin, 0.0, 0.0), 0.0, 0.0);
    auto [tl, tr] = turning_points({0.0, 0.0, 1.0}, 1.0);
    st.check("turning points of V = t^2 at E = 1", std::abs(tl + 1.0) < 1e-12 &&
                                                       std::abs(tr - 1.0) < 1e-12);
    auto [pn, rec] = normalize(ProblemSpec::from_mu({0.0, 4.0}, 0.5));
    st.close("normalized mu'(0) = 1", pn.mu_prime(0.0), 1.0, 1e-15);
    st.close("round trip reproduces mu = 4t", denormalized_mu(pn, rec, 0.3), 1.2, 1e-15);
    return st.failures;
}

int cmd_validate(const std::vector<int>& ids) {
    std::vector<CriterionResult> results = run_criteria(ids);
    bool all = true;
    for (const auto& r : results) {
        std::cout << "criterion " << r.id << " (" << r.name << "): "
                  << (r.pass ? "PASS" : "FAIL") << " -- " << r.detail << "\n";
        all = all && r.pass;
    }
    std::cout << (all ? "all criteria passed" : "validation FAILED") << "\n";
    return all ? 0 : EXIT_VALIDATION;
}

// ==== rates ====================================================================
// Sup relative error between the uniform approximant and the normalized
// reference over [-delta, delta], per eps; fan-out over the eps sweep.
int cmd_rates(const std::string& problem, std::vector<double> eps_list, double delta, int grid,
              const std::string& format, const std::string& out_path) {
    ProblemSpec p = load_problem(problem);
    if (eps_list.size() < 3) throw usage_error("--eps needs at least 3 values for a rate fit");
    for (double e : eps_list)
        if (!(e > 0.0)) throw usage_error("--eps values must be positive");
    if (!(delta > 0.0) || !(delta <= p.nu0))
        throw usage_error("--delta must lie in (0, nu0]");
    std::vector<double> ts;
    for (int i = 0; i < grid; ++i) ts.push_back(-delta + 2.0 * delta * i / (grid - 1));
    ts.back() = delta;  // guard the window endpoint against rounding
    std::vector<double> sup(eps_list.size());
    parallel_for(static_cast<int>(eps_list.size()), [&](int k) {
        double eps = eps_list[static_cast<size_t>(k)], e13 = std::cbrt(eps);
        // reference path along W^u from -nu0 (each worker owns its integration)
        LogScaledState s = LogScaledState::from_xy(-p.nu0, 1.0, std::sqrt(-p.mu(-p.nu0)));
        std::vector<std::pair<double, double>> A(ts.size()), R(ts.size());
        for (size_t i = 0; i < ts.size(); ++i) {
            s = integrate(p, eps, s, ts[i], 1e-12);
            R[i] = {s.x(), s.y() / e13};
            ApproxValue a = uniform_wu_solution(p, eps, delta, ts[i], delta);
            A[i] = {std::exp(a.logmag) * a.xm, std::exp(a.logmag) * a.ym / e13};
        }
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            num += A[i].first * R[i].first + A[i].second * R[i].second;
            den += R[i].first * R[i].first + R[i].second * R[i].second;
        }
        double c = num / den, worst = 0.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            double e = std::hypot(A[i].first - c * R[i].first, A[i].second - c * R[i].second);
            double m = std::hypot(c * R[i].first, c * R[i].second);
            worst = std::max(worst, e / m);
        }
        sup[static_cast<size_t>(k)] = worst;
    });
    Table t;
    t.columns = {"eps", "sup_error"};
    std::vector<std::pair<double, double>> pts;
    for (size_t k = 0; k < eps_list.size(); ++k) {
        t.rows.push_back({eps_list[k], sup[k]});
        pts.push_back({eps_list[k], sup[k]});
    }
    RateFit f = rate_fit(pts);
    t.footer = {{"fitted_slope", f.slope}, {"slope_half_width", f.half_width}};
    t.write(format, out_path);
    return 0;
}

// ==== eigen ====================================================================
int selftest_eigen() {
    SelfTest st;
    auto [tl, tr] = turning_points({0.0, 0.0, 1.0}, 1.0);
    st.check("V = t^2, E = 1 turning points (-1, 1)",
             std::abs(tl + 1.0) < 1e-12 && std::abs(tr - 1.0) < 1e-12);
    bool threw = false;
    try {
        turning_points({0.0, 0.0, 1.0}, 0.0);
    } catch (const std::exception&) {
        threw = true;
    }
    st.check("V = t^2, E = 0 raises the degenerate-well error", threw);
    std::vector<double> bs = bs_energies({0.0, 0.0, 1.0}, 0.1, 2);
    double worst = 0.0;
    for (int n = 0; n < static_cast<int>(bs.size()); ++n)
        worst = std::max(worst, std::abs(bs[static_cast<size_t>(n)] - 0.1 * (2 * n + 1)));
    st.close("harmonic Bohr-Sommerfeld E_n = eps (2n+1)", worst, 0.0, 1e-10);
    return st.failures;
}

int cmd_eigen(const std::string& well, std::vector<double> eps_list, int nmax, double tol,
              const std::string& format, const std::string& out_path) {
    std::vector<double> v = load_well(well);
    if (eps_list.empty()) throw usage_error("--eps is required");
    if (nmax < 0) throw usage_error("--nmax must be >= 0");
    std::vector<std::vector<EigenResult>> per_eps(eps_list.size());
    parallel_for(static_cast<int>(eps_list.size()), [&](int k) {
        per_eps[static_cast<size_t>(k)] =
            eigen_compare(v, eps_list[static_cast<size_t>(k)], nmax, tol);
    });
    Table t;
    bool multi = eps_list.size() > 1;
    t.columns = multi ? std::vector<std::string>{"eps", "n", "E_bs", "E_ref", "gap", "gap_over_eps"}
                      : std::vector<std::string>{"n", "E_bs", "E_ref", "gap", "gap_over_eps"};
    for (size_t k = 0; k < eps_list.size(); ++k)
        for (const auto& r : per_eps[k]) {
            std::vector<double> row;
            if (multi) row.push_back(r.eps);
            row.insert(row.end(), {static_cast<double>(r.n), r.E_bs, r.E_ref, r.gap,
                                   r.gap / r.eps});
            t.rows.push_back(row);
        }
    t.write(format, out_path);
    return 0;
}

// ==== driver ===================================================================
int run_selftest(const std::string& name) {
    std::cout << name << " selftest:\n";
    int fails = 0;
    if (name == "airy-table") fails = selftest_airy();
    else if (name == "series") fails = selftest_series();
    else if (name == "approx") fails = selftest_approx();
    else if (name == "charts-check") fails = selftest_charts();
    else if (name == "validate" || name == "rates") fails = selftest_validate();
    else if (name == "eigen") fails = selftest_eigen();
    std::cout << name << " selftest: " << (fails == 0 ? "PASS" : "FAIL") << "\n";
    return fails == 0 ? 0 : EXIT_VALIDATION;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turning-point connection toolkit for eps^2 x'' + mu(t) x = 0"};
    app.require_subcommand(1);

    std::string problem, well, out_path;
    std::string format = "csv", side = "elliptic";
    double from = -5.0, to = 2.0, step = 0.5;
    double eps_one = 1e-2, delta = 0.2, nu = -1.0, t_point = 1.0, tol = 1e-11;
    std::vector<double> eps_list;
    std::vector<int> criteria;
    int grid = 400, order = 6, nmax = 8;
    bool st_airy = false, st_series = false, st_approx = false, st_charts = false,
         st_validate = false, st_rates = false, st_eigen = false;

    auto* airy = app.add_subcommand("airy-table", "Tabulate Ai, Ai', Bi, Bi'");
    airy->add_option("--from", from, "start of the x range");
    airy->add_option("--to", to, "end of the x range");
    airy->add_option("--step", step, "grid step");
    airy->add_option("--out", format, "output format: csv or json");
    airy->add_option("--output", out_path, "output file (default stdout)");
    airy->add_flag("--selftest", st_airy, "run the module's built-in checks");

    auto* series = app.add_subcommand("series", "Riccati expansion coefficients at a point");
    series->add_option("--problem", problem, "problem JSON file");
    series->add_option("--t", t_point, "evaluation point");
    series->add_option("--side", side, "elliptic (t > 0) or hyperbolic (t < 0)");
    series->add_option("--order", order, "truncation order N");
    series->add_option("--out", format, "output format: csv or json");
    series->add_option("--output", out_path, "output file (default stdout)");
    series->add_flag("--selftest", st_series, "run the module's built-in checks");

    auto* approx = app.add_subcommand("approx", "Uniform three-interval approximant on a grid");
    approx->add_option("--problem", problem, "problem JSON file");
    approx->add_option("--eps", eps_one, "small parameter");
    approx->add_option("--delta", delta, "handover parameter");
    approx->add_option("--nu", nu, "window half-width (default: problem nu0)");
    approx->add_option("--grid", grid, "number of grid points");
    approx->add_option("--out", format, "output format: csv or json");
    approx->add_option("--output", out_path, "output file (default stdout)");
    approx->add_flag("--selftest", st_approx, "run the module's built-in checks");

    auto* charts = app.add_subcommand("charts-check", "Blowup-chart round-trip/conservation suite");
    charts->add_option("--problem", problem, "problem JSON file");
    charts->add_option("--output", out_path, "output file (default stdout)");
    charts->add_flag("--selftest", st_charts, "run the module's built-in checks");

    auto* validate = app.add_subcommand("validate", "Run the acceptance criteria");
    validate->add_option("--criteria", criteria, "criterion ids (default: all nine)")
        ->delimiter(',');
    validate->add_flag("--selftest", st_validate, "run the module's built-in checks");

    auto* rates = app.add_subcommand("rates", "Empirical convergence rate of the approximant");
    rates->add_option("--problem", problem, "problem JSON file");
    rates->add_option("--eps", eps_list, "comma-separated eps sweep")->delimiter(',');
    rates->add_option("--delta", delta, "handover parameter and window half-width");
    rates->add_option("--grid", grid, "grid points per eps");
    rates->add_option("--out", format, "output format: csv or json");
    rates->add_option("--output", out_path, "output file (default stdout)");
    rates->add_flag("--selftest", st_rates, "run the module's built-in checks");

    auto* eigen = app.add_subcommand("eigen", "Bohr-Sommerfeld vs shooting-reference energies");
    eigen->add_option("--well", well, "well JSON file ({\"v_poly\": [...]})");
    eigen->add_option("--eps", eps_list, "eps value or comma-separated sweep")->delimiter(',');
    eigen->add_option("--nmax", nmax, "highest quantum number");
    eigen->add_option("--tol", tol, "shooting tolerance");
    eigen->add_option("--out", format, "output format: csv or json");
    eigen->add_option("--output", out_path, "output file (default stdout)");
    eigen->add_flag("--selftest", st_eigen, "run the module's built-in checks");

    auto* all = app.add_subcommand("selftest-all", "Run every subcommand's selftest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return EXIT_USAGE;
    }

    try {
        if (all->parsed()) {
            int rc = 0;
            for (const char* name :
                 {"airy-table", "series", "approx", "charts-check", "validate", "eigen"})
                rc |= run_selftest(name);
            return rc;
        }
        if (airy->parsed())
            return st_airy ? run_selftest("airy-table")
                           : cmd_airy_table(from, to, step, format, out_path);
        if (series->parsed())
            return st_series ? run_selftest("series")
                             : cmd_series(problem, t_point, side, order, format, out_path);
        if (approx->parsed())
            return st_approx ? run_selftest("approx")
                             : cmd_approx(problem, eps_one, delta, grid, nu, format, out_path);
        if (charts->parsed())
            return st_charts ? run_selftest("charts-check") : cmd_charts_check(problem, out_path);
        if (validate->parsed())
            return st_validate ? run_selftest("validate") : cmd_validate(criteria);
        if (rates->parsed())
            return st_rates ? run_selftest("rates")
                            : cmd_rates(problem, eps_list, delta, grid, format, out_path);
        if (eigen->parsed())
            return st_eigen ? run_selftest("eigen")
                            : cmd_eigen(well, eps_list, nmax, tol, format, out_path);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
    return EXIT_USAGE;
}
