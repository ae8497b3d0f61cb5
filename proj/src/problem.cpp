#include "tpwkb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tpwkb/quadrature.hpp"

namespace tpwkb {

double poly_eval(const std::vector<double>& c, double t) {
    double acc = 0.0;
    for (size_t j = c.size(); j-- > 0;) acc = acc * t + c[j];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
    return d;
}

// Taylor-shift a polynomial: coefficients of p(t0 + u) in u (exact for doubles
// up to rounding; done by repeated synthetic division).
static std::vector<double> poly_shift(std::vector<double> c, double t0) {
    const size_t n = c.size();
    std::vector<double> out(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        // evaluate and deflate: c(t) = (t - t0) q(t) + r
        double r = 0.0;
        for (size_t k = n - j; k-- > 0;) {
            double tmp = c[k] + r * t0;
            c[k] = r;
            r = tmp;
        }
        out[j] = r;
        // c now holds the quotient, already aligned at index 0
    }
    return out;
}

double ProblemSpec::mu(double t) const { return poly_eval(mu_coeffs, t); }
double ProblemSpec::mu_prime(double t) const { return poly_eval(poly_derivative(mu_coeffs), t); }

void ProblemSpec::validate() const {
    if (mu_coeffs.size() < 2) throw std::invalid_argument("mu must have degree >= 1");
    double scale = 0.0;
    for (double c : mu_coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(mu_coeffs[0]) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("mu(0) must vanish (simple turning point at t = 0)");
    if (!(mu_coeffs[1] > 0.0)) throw std::invalid_argument("mu'(0) must be positive");
    // mu != 0 on 0 < |t| <= nu0  <=>  muhat > 0 on [-nu0, nu0]
    for (int i = 0; i <= 512; ++i) {
        double t = -nu0 + 2.0 * nu0 * i / 512.0;
        if (!(mu_hat(*this, t) > 0.0))
            throw std::invalid_argument("mu has a zero inside the neighborhood |t| <= nu0");
    }
}

ProblemSpec ProblemSpec::from_mu(std::vector<double> mu, double nu0) {
    ProblemSpec p;
    p.mu_coeffs = std::move(mu);
    p.nu0 = nu0;
    if (!p.mu_coeffs.empty()) {
        double scale = 0.0;
        for (double c : p.mu_coeffs) scale = std::max(scale, std::abs(c));
        if (std::abs(p.mu_coeffs[0]) <= 1e-12 * std::max(1.0, scale)) p.mu_coeffs[0] = 0.0;
    }
    p.validate();
    return p;
}

ProblemSpec ProblemSpec::from_well(std::vector<double> v, double E, double nu0) {
    auto [tm, tp] = turning_points(v, E);
    // mu(t) = E - V(t + t_minus): shift, negate, set the (tiny) constant term to 0
    std::vector<double> shifted = poly_shift(v, tm);
    std::vector<double> mu(shifted.size());
    for (size_t j = 0; j < shifted.size(); ++j) mu[j] = -shifted[j];
    mu[0] += E;
    ProblemSpec p = from_mu(std::move(mu), nu0);
    p.v_coeffs = std::move(v);
    p.energy = E;
    (void)tp;
    return p;
}

ProblemSpec ProblemSpec::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    double nu0 = j.value("nu0", 0.5);
    if (j.contains("mu_poly")) {
        return from_mu(j["mu_poly"].get<std::vector<double>>(), nu0);
    }
    if (j.contains("v_poly")) {
        if (!j.contains("energy")) throw std::invalid_argument("well form requires \"energy\"");
        return from_well(j["v_poly"].get<std::vector<double>>(), j["energy"].get<double>(), nu0);
    }
    throw std::invalid_argument("problem JSON needs \"mu_poly\" or \"v_poly\"");
}

ProblemSpec ProblemSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

DJet mu_jet(const ProblemSpec& p, double t, int k) {
    if (k < 0) throw std::invalid_argument("mu_jet: order must be >= 0");
    std::vector<double> c = poly_shift(p.mu_coeffs, t);
    c.resize(static_cast<size_t>(std::max<int>(k + 1, 1)), 0.0);
    c.resize(static_cast<size_t>(k) + 1);
    return DJet(t, std::move(c));
}

// muhat as an exact polynomial: mu(0) = 0, so muhat coefficients are
// mu_coeffs shifted down by one degree.
static std::vector<double> mu_hat_coeffs(const ProblemSpec& p) {
    std::vector<double> c(p.mu_coeffs.begin() + 1, p.mu_coeffs.end());
    if (c.empty()) c.push_back(0.0);
    return c;
}

double mu_hat(const ProblemSpec& p, double t) { return poly_eval(mu_hat_coeffs(p), t); }
double mu_hat_prime(const ProblemSpec& p, double t) {
    return poly_eval(poly_derivative(mu_hat_coeffs(p)), t);
}

DJet mu_hat_jet(const ProblemSpec& p, double t, int k) {
    std::vector<double> c = poly_shift(mu_hat_coeffs(p), t);
    c.resize(static_cast<size_t>(k) + 1, 0.0);
    return DJet(t, std::move(c));
}

// One half-interval with a simple-zero left endpoint t0 (direction dir = +/-1):
// int sqrt(|mu|) over sigma^2-substituted variable.  |mu(t0 + dir w)| =
// w * |psi(w)| with psi polynomial-exact, so the integrand 2 sigma^2
// sqrt(|psi(sigma^2)|) is smooth.
static double action_from_zero(const ProblemSpec& p, double t0, double dir, double len) {
    std::vector<double> d = poly_shift(p.mu_coeffs, t0);  // mu(t0 + u) coefficients
    // psi(w) = mu(t0 + dir*w)/ (dir*w) ... we need |mu(t0+dir*w)| / w
    // mu(t0 + dir*w) = sum d_j dir^j w^j, constant term ~ 0
    std::vector<double> psi(d.size() > 1 ? d.size() - 1 : 1, 0.0);
    for (size_t j = 1; j < d.size(); ++j) psi[j - 1] = d[j] * std::pow(dir, static_cast<double>(j));
    auto f = [&](double s) {
        double w = s * s;
        return 2.0 * s * s * std::sqrt(std::abs(poly_eval(psi, w)));
    };
    return adaptive_quad<double>(f, 0.0, std::sqrt(len), 1e-14);
}

double action(const ProblemSpec& p, double a, double b) {
    if (a == b) return 0.0;
    if (a > b) return action(p, b, a);
    // interior sign check
    double ref_sign = 0.0;
    for (int i = 1; i < 64; ++i) {
        double t = a + (b - a) * i / 64.0;
        double m = p.mu(t);
        double tol = 1e-12 * std::max(1.0, std::abs(p.mu_prime(t)) * (b - a));
        if (std::abs(m) <= tol) continue;
        double s = m > 0 ? 1.0 : -1.0;
        if (ref_sign == 0.0) ref_sign = s;
        else if (s != ref_sign)
            throw std::domain_error("action: mu changes sign in the interior of [a, b]");
    }
    auto is_zero = [&](double t) {
        return std::abs(p.mu(t)) <=
               1e-10 * std::max(1.0, std::abs(p.mu_prime(t)) * std::max(1.0, b - a));
    };
    bool za = is_zero(a), zb = is_zero(b);
    auto plain = [&](double lo, double hi) {
        return adaptive_quad<double>([&](double t) { return std::sqrt(std::abs(p.mu(t))); }, lo, hi,
                                     1e-14);
    };
    if (za && zb) {
        double c = 0.5 * (a + b);
        return action_from_zero(p, a, +1.0, c - a) + action_from_zero(p, b, -1.0, b - c);
    }
    if (za) return action_from_zero(p, a, +1.0, b - a);
    if (zb) return action_from_zero(p, b, -1.0, b - a);
    return plain(a, b);
}

std::pair<double, double> turning_points(const std::vector<double>& v_coeffs, double E) {
    auto g = [&](double t) { return E - poly_eval(v_coeffs, t); };
    auto gp = [&](double t) { return -poly_eval(poly_derivative(v_coeffs), t); };
    // Cauchy-style bound on roots of V - E
    double lead = 0.0;
    size_t deg = 0;
    for (size_t j = 0; j < v_coeffs.size(); ++j)
        if (v_coeffs[j] != 0.0) { lead = v_coeffs[j]; deg = j; }
    if (deg < 2 || lead <= 0.0)
        throw std::domain_error("turning_points: V must grow (positive even leading term)");
    double R = 1.0;
    for (size_t j = 0; j < deg; ++j) {
        double cj = v_coeffs[j] - (j == 0 ? E : 0.0);
        R = std::max(R, std::abs(cj / lead));
    }
    R = 2.0 * (1.0 + R);
    const int n = 4096;
    std::vector<double> brackets;
    double prev_t = -R, prev_g = g(prev_t);
    for (int i = 1; i <= n; ++i) {
        double t = -R + 2.0 * R * i / n;
        double gi = g(t);
        if (gi == 0.0) {
            // root exactly on a scan point: record it as a degenerate bracket
            brackets.push_back(t);
            brackets.push_back(t);
        } else if (prev_g != 0.0 && (prev_g < 0) != (gi < 0)) {
            brackets.push_back(prev_t);
            brackets.push_back(t);
        }
        prev_t = t;
        prev_g = gi;
    }
    if (brackets.size() != 4)
        throw std::domain_error("turning_points: degenerate well (need exactly two simple roots)");
    auto refine = [&](double lo, double hi) {
        double flo = g(lo);
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            double mid = 0.5 * (lo + hi);
            double fm = g(mid);
            // Newton polish from the midpoint when it stays inside the bracket
            double d = gp(mid);
            if (d != 0.0) {
                double nt = mid - fm / d;
                if (nt > lo && nt < hi && std::abs(g(nt)) < std::abs(fm)) {
                    mid = nt;
                    fm = g(mid);
                }
            }
            if (fm == 0.0) return mid;
            if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; }
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double r1 = refine(brackets[0], brackets[1]);
    double r2 = refine(brackets[2], brackets[3]);
    // simple roots: derivative must not vanish
    if (std::abs(gp(r1)) < 1e-10 || std::abs(gp(r2)) < 1e-10)
        throw std::domain_error("turning_points: degenerate (double) root");
    return {std::min(r1, r2), std::max(r1, r2)};
}

std::pair<ProblemSpec, NormalizationRecord> normalize(const ProblemSpec& p) {
    double a = p.mu_coeffs.size() > 1 ? p.mu_coeffs[1] : 0.0;
    if (!(a > 0.0)) throw std::invalid_argument("normalize: mu'(0) must be positive");
    double alpha = std::pow(a, -1.0 / 3.0);  // t = alpha * s
    std::vector<double> c(p.mu_coeffs.size());
    double f = alpha * alpha;  // alpha^{j+2}
    for (size_t j = 0; j < c.size(); ++j) {
        c[j] = p.mu_coeffs[j] * f;
        f *= alpha;
    }
    ProblemSpec q = p;
    q.mu_coeffs = std::move(c);
    q.mu_coeffs[0] = 0.0;
    NormalizationRecord rec;
    rec.t_scale = alpha;
    rec.y_scale = alpha;
    rec.original = p;
    return {q, rec};
}

double denormalized_mu(const ProblemSpec& normalized, const NormalizationRecord& rec, double t) {
    double a2 = rec.t_scale * rec.t_scale;
    return normalized.mu(t / rec.t_scale) / a2;
}

} // namespace tpwkb
