#pragma once
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace tpwkb {

// Truncated Taylor jet of a scalar function at a base point:
// coeffs[j] = f^{(j)}(t*)/j!.  Dense coefficient array, explicit order.
// Ring operations are exact (up to rounding) through the truncation order.
template <class T>
class Jet {
public:
    Jet() = default;
    Jet(double base, std::vector<T> coeffs) : base_(base), c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(T(0));
    }
    static Jet constant(double base, T value, int order) {
        std::vector<T> c(static_cast<size_t>(order) + 1, T(0));
        c[0] = value;
        return Jet(base, std::move(c));
    }
    // jet of the identity map t -> t
    static Jet variable(double base, int order) {
        std::vector<T> c(static_cast<size_t>(order) + 1, T(0));
        c[0] = T(base);
        if (order >= 1) c[1] = T(1);
        return Jet(base, std::move(c));
    }

    double base() const { return base_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](int j) const { return c_[static_cast<size_t>(j)]; }
    T& operator[](int j) { return c_[static_cast<size_t>(j)]; }
    T value() const { return c_[0]; }

    Jet truncated(int order) const {
        std::vector<T> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), order + 1));
        c.resize(static_cast<size_t>(order) + 1, T(0));
        return Jet(base_, std::move(c));
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = a.order() >= b.order() ? a : b;
        const Jet& s = a.order() >= b.order() ? b : a;
        for (int j = 0; j <= s.order(); ++j) r[j] += s[j];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = a;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), T(0));
        for (int j = 0; j <= b.order(); ++j) r[j] -= b[j];
        return r;
    }
    Jet operator-() const {
        Jet r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        // products keep the finer of the two truncation orders
        int n = std::max(a.order(), b.order());
        std::vector<T> c(static_cast<size_t>(n) + 1, T(0));
        for (int i = 0; i <= a.order(); ++i)
            for (int j = 0; j <= b.order() && i + j <= n; ++j)
                c[static_cast<size_t>(i + j)] += a[i] * b[j];
        return Jet(a.base_, std::move(c));
    }
    friend Jet operator*(T s, const Jet& a) {
        Jet r = a;
        for (auto& v : r.c_) v = s * v;
        return r;
    }
    friend Jet operator*(const Jet& a, T s) { return s * a; }

    // division: denominator must have nonzero constant term
    friend Jet operator/(const Jet& a, const Jet& b) {
        if (std::abs(b[0]) == 0.0)
            throw std::domain_error("Jet division by series with zero constant term");
        int n = std::max(a.order(), b.order());
        std::vector<T> c(static_cast<size_t>(n) + 1, T(0));
        for (int j = 0; j <= n; ++j) {
            T s = j <= a.order() ? a[j] : T(0);
            for (int k = 1; k <= std::min(j, b.order()); ++k) s -= b[k] * c[static_cast<size_t>(j - k)];
            c[static_cast<size_t>(j)] = s / b[0];
        }
        return Jet(a.base_, std::move(c));
    }

    // d/dt: order drops by one
    Jet derivative() const {
        if (order() == 0) return Jet(base_, {T(0)});
        std::vector<T> c(c_.size() - 1);
        for (size_t j = 1; j < c_.size(); ++j) c[j - 1] = static_cast<double>(j) * c_[j];
        return Jet(base_, std::move(c));
    }

    T eval(double t) const {  // Horner in (t - base)
        double dt = t - base_;
        T acc = c_.back();
        for (size_t j = c_.size() - 1; j-- > 0;) acc = acc * dt + c_[j];
        return acc;
    }

private:
    double base_ = 0.0;
    std::vector<T> c_{T(0)};
};

// Square root of a jet whose constant term is positive (real case) or nonzero
// (complex case): Newton-free coefficient recursion from (sqrt f)^2 = f.
template <class T>
Jet<T> jet_sqrt(const Jet<T>& f) {
    T f0 = f[0];
    if constexpr (std::is_same_v<T, double>) {
        if (!(f0 > 0.0)) throw std::domain_error("jet_sqrt: nonpositive constant term");
    } else {
        if (std::abs(f0) == 0.0) throw std::domain_error("jet_sqrt: zero constant term");
    }
    int n = f.order();
    std::vector<T> c(static_cast<size_t>(n) + 1, T(0));
    c[0] = std::sqrt(f0);
    for (int j = 1; j <= n; ++j) {
        T s = f[j];
        for (int k = 1; k < j; ++k) s -= c[static_cast<size_t>(k)] * c[static_cast<size_t>(j - k)];
        c[static_cast<size_t>(j)] = s / (2.0 * c[0]);
    }
    return Jet<T>(f.base(), std::move(c));
}

// log of a jet with positive real constant term (used by the even/odd check):
// (log f)' = f'/f integrated termwise; constant term log f0.
template <class T>
Jet<T> jet_log(const Jet<T>& f) {
    int n = f.order();
    Jet<T> g = f.derivative() / f.truncated(std::max(0, n - 1));
    std::vector<T> c(static_cast<size_t>(n) + 1, T(0));
    c[0] = std::log(f[0]);
    for (int j = 1; j <= n; ++j) c[static_cast<size_t>(j)] = g[j - 1] / static_cast<double>(j);
    return Jet<T>(f.base(), std::move(c));
}

using DJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

} // namespace tpwkb
