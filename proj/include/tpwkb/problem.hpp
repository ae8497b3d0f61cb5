#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpwkb/jet.hpp"

namespace tpwkb {

// The coefficient function mu of eps^2 x'' + mu(t) x = 0 near a simple turning
// point at t = 0: mu(0) = 0, mu'(0) > 0, mu != 0 on 0 < |t| <= nu0.
// mu is restricted to polynomials so that all jets are exact.
struct ProblemSpec {
    std::vector<double> mu_coeffs;              // mu(t) = sum mu_coeffs[j] t^j
    std::optional<std::vector<double>> v_coeffs; // well form V, if given
    std::optional<double> energy;                // well form E
    double nu0 = 0.5;                            // neighborhood radius

    static ProblemSpec from_mu(std::vector<double> mu, double nu0 = 0.5);
    // well form: mu(t) = E - V(t + t_minus(E)), left turning point shifted to 0
    static ProblemSpec from_well(std::vector<double> v, double E, double nu0 = 0.5);
    // {"mu_poly": [...]} or {"v_poly": [...], "energy": E, "nu0": r}
    static ProblemSpec from_json_text(const std::string& text);
    static ProblemSpec from_json_file(const std::string& path);

    double mu(double t) const;
    double mu_prime(double t) const;
    void validate() const;  // throws std::invalid_argument on invariant violation
};

struct NormalizationRecord {
    double t_scale = 1.0;  // t_original = t_scale * t_normalized
    double y_scale = 1.0;  // y_original = y_normalized / y_scale
    ProblemSpec original;
};

// Exact polynomial jet: coefficient j equals mu^{(j)}(t)/j!.
DJet mu_jet(const ProblemSpec& p, double t, int k);

// muhat(t) = mu(t)/t for t != 0, mu'(0) at 0 (continuous since mu(0) = 0).
double mu_hat(const ProblemSpec& p, double t);
double mu_hat_prime(const ProblemSpec& p, double t);
// exact polynomial jet of muhat
DJet mu_hat_jet(const ProblemSpec& p, double t, int k);

// int_a^b sqrt(|mu|) with endpoint square-root singularities removed by the
// substitution s = t0 +/- sigma^2 at simple-zero endpoints.  mu must keep a
// constant sign on the open interval.
double action(const ProblemSpec& p, double a, double b);

// The two simple roots of E - V bracketing the well minimum.
std::pair<double, double> turning_points(const std::vector<double>& v_coeffs, double E);

// Rescale so that mu'(0) = 1 (t -> t_scale * t, mu -> mu / t_scale^2 pattern).
std::pair<ProblemSpec, NormalizationRecord> normalize(const ProblemSpec& p);

// Evaluate the original mu from the normalized problem and its record.
double denormalized_mu(const ProblemSpec& normalized, const NormalizationRecord& rec, double t);

// polynomial helpers (shared with eigen)
double poly_eval(const std::vector<double>& c, double t);
std::vector<double> poly_derivative(const std::vector<double>& c);

} // namespace tpwkb
