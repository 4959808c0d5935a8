#pragma once

// Exact arithmetic in F_{p^k} (p an odd prime) with a polynomial-quotient
// representation, plus the dense exact linear algebra (rank, kernel, solve,
// row reduction) used throughout the library.
//
// A FieldCtx is immutable after construction and safe for concurrent reads.
// FqElem values keep a raw pointer to their context; the context must outlive
// every element created from it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superverma::gf {

// Compile-time cap on the extension degree. Keeps elements inline and
// allocation-free; raise if a scenario ever needs a bigger tower.
inline constexpr int kMaxDegree = 8;

class FieldCtx;

/// Element of F_{p^k}: k residues mod p, coordinates in the power basis of
/// the modulus root t (index i holds the coefficient of t^i).
class FqElem {
public:
    FqElem() : ctx_(nullptr) { coeffs_.fill(0); }
    FqElem(const FieldCtx* ctx, const std::array<uint32_t, kMaxDegree>& c)
        : ctx_(ctx), coeffs_(c) {}

    const FieldCtx* ctx() const { return ctx_; }
    uint32_t coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (uint32_t c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// Element rank when coefficient tuples are read as base-p integers
    /// (constant term least significant). Defines the canonical order.
    uint64_t counting_value() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;
    FqElem& operator+=(const FqElem& o) { return *this = *this + o; }
    FqElem& operator-=(const FqElem& o) { return *this = *this - o; }
    FqElem& operator*=(const FqElem& o) { return *this = *this * o; }

    FqElem inverse() const;
    FqElem pow(uint64_t e) const;
    /// Frobenius x -> x^p.
    FqElem frobenius() const;

    bool operator==(const FqElem& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const FqElem& o) const { return !(*this == o); }
    bool operator<(const FqElem& o) const { return counting_value() < o.counting_value(); }

    /// Text form: polynomial in t with decimal coefficients, e.g. "2*t^2+t+1".
    std::string str() const;

private:
    friend class FieldCtx;
    const FieldCtx* ctx_;
    std::array<uint32_t, kMaxDegree> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const FqElem& x) { return os << x.str(); }

/// The field F_{p^k} = F_p[t]/(modulus). The modulus is the monic irreducible
/// polynomial of degree k over F_p whose coefficient tuple is smallest when
/// read as a base-p integer (constant term least significant); for k = 1 the
/// modulus is t and elements are plain residues mod p.
class FieldCtx {
public:
    static bool is_prime(uint32_t p) {
        if (p < 2) return false;
        for (uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    FieldCtx(uint32_t p, int k) : p_(p), k_(k) {
        if (!is_prime(p) || p == 2)
            throw std::invalid_argument("field_make: p must be an odd prime, got " + std::to_string(p));
        if (p >= (1u << 15))
            throw std::invalid_argument("field_make: p exceeds the desk-scale cap 2^15");
        if (k < 1) throw std::invalid_argument("field_make: extension degree k must be >= 1");
        if (k > kMaxDegree)
            throw std::invalid_argument("field_make: k exceeds compiled cap " + std::to_string(kMaxDegree));
        modulus_ = smallest_irreducible();
        build_reduction_rows();
        build_artin_schreier_matrix();
    }

    uint32_t p() const { return p_; }
    int k() const { return k_; }
    uint64_t q() const {
        uint64_t r = 1;
        for (int i = 0; i < k_; ++i) r *= p_;
        return r;
    }
    /// Coefficients c_0..c_{k-1} of the monic modulus t^k + c_{k-1}t^{k-1} + ... + c_0.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FqElem zero() const { return make_raw({}); }
    FqElem one() const { return from_int(1); }
    FqElem from_int(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += p_;
        std::array<uint32_t, kMaxDegree> c{};
        c[0] = static_cast<uint32_t>(r);
        return FqElem(this, c);
    }
    /// Element from power-basis coordinates (length <= k, entries reduced mod p).
    FqElem from_coeffs(const std::vector<int64_t>& v) const {
        if (static_cast<int>(v.size()) > k_)
            throw std::invalid_argument("from_coeffs: too many coordinates");
        std::array<uint32_t, kMaxDegree> c{};
        for (size_t i = 0; i < v.size(); ++i) {
            int64_t r = v[i] % static_cast<int64_t>(p_);
            if (r < 0) r += p_;
            c[i] = static_cast<uint32_t>(r);
        }
        return FqElem(this, c);
    }
    FqElem half() const { return from_int(2).inverse(); }

    /// All elements in canonical (counting) order. Only sensible at desk scale.
    std::vector<FqElem> all_elements() const {
        std::vector<FqElem> out;
        out.reserve(static_cast<size_t>(q()));
        std::array<uint32_t, kMaxDegree> c{};
        for (uint64_t v = 0; v < q(); ++v) {
            uint64_t t = v;
            for (int i = 0; i < k_; ++i) { c[static_cast<size_t>(i)] = static_cast<uint32_t>(t % p_); t /= p_; }
            out.emplace_back(this, c);
        }
        return out;
    }

    /// Parse the text form produced by FqElem::str (sums/differences of
    /// decimal-coefficient powers of t).
    FqElem parse(const std::string& s) const;

    // -- raw coefficient arithmetic -------------------------------------

    FqElem add(const FqElem& a, const FqElem& b) const {
        std::array<uint32_t, kMaxDegree> c{};
        for (int i = 0; i < k_; ++i) c[i] = (a.coeffs_[i] + b.coeffs_[i]) % p_;
        return FqElem(this, c);
    }
    FqElem sub(const FqElem& a, const FqElem& b) const {
        std::array<uint32_t, kMaxDegree> c{};
        for (int i = 0; i < k_; ++i) c[i] = (a.coeffs_[i] + p_ - b.coeffs_[i]) % p_;
        return FqElem(this, c);
    }
    FqElem neg(const FqElem& a) const {
        std::array<uint32_t, kMaxDegree> c{};
        for (int i = 0; i < k_; ++i) c[i] = (p_ - a.coeffs_[i]) % p_;
        return FqElem(this, c);
    }
    FqElem mul(const FqElem& a, const FqElem& b) const {
        // Schoolbook product followed by reduction with the precomputed
        // rows for t^k .. t^{2k-2}.
        std::array<uint64_t, 2 * kMaxDegree> prod{};
        for (int i = 0; i < k_; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (int j = 0; j < k_; ++j)
                prod[static_cast<size_t>(i + j)] += static_cast<uint64_t>(a.coeffs_[i]) * b.coeffs_[j];
        }
        std::array<uint32_t, kMaxDegree> c{};
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            uint64_t v = prod[static_cast<size_t>(d)] % p_;
            if (v == 0) continue;
            prod[static_cast<size_t>(d)] = 0;
            const auto& row = red_rows_[static_cast<size_t>(d - k_)];
            for (int i = 0; i < k_; ++i) prod[static_cast<size_t>(i)] += v * row[static_cast<size_t>(i)];
        }
        for (int i = 0; i < k_; ++i) c[i] = static_cast<uint32_t>(prod[static_cast<size_t>(i)] % p_);
        return FqElem(this, c);
    }

    FqElem inverse(const FqElem& a) const {
        if (a.is_zero()) throw std::domain_error("inverse of zero");
        // Extended Euclid on (modulus, a) over F_p[t].
        std::vector<uint32_t> r0 = modulus_;
        r0.push_back(1); // monic of degree k
        std::vector<uint32_t> r1(a.coeffs_.begin(), a.coeffs_.begin() + k_);
        trim(r1);
        std::vector<uint32_t> s0{0}, s1{1};
        while (!(r1.size() == 1 && r1[0] == 0)) {
            auto [quo, rem] = poly_divmod(r0, r1);
            r0 = std::move(r1); r1 = std::move(rem);
            auto t = poly_sub(s0, poly_mul(quo, s1));
            s0 = std::move(s1); s1 = std::move(t);
        }
        // r0 = gcd (degree 0 since modulus irreducible and a != 0)
        if (r0.size() != 1 || r0[0] == 0) throw std::logic_error("inverse: modulus not irreducible?");
        uint32_t g_inv = mod_inverse(r0[0]);
        std::array<uint32_t, kMaxDegree> c{};
        for (size_t i = 0; i < s0.size() && i < static_cast<size_t>(k_); ++i)
            c[i] = static_cast<uint32_t>((static_cast<uint64_t>(s0[i]) * g_inv) % p_);
        return FqElem(this, c);
    }

private:
    friend class FqElem;
    uint32_t p_;
    int k_;
    std::vector<uint32_t> modulus_;                 // c_0..c_{k-1}
    std::vector<std::vector<uint32_t>> red_rows_;   // t^{k+j} expressed in the power basis
    std::vector<std::vector<uint32_t>> as_matrix_;  // k x k matrix of x -> x^p - x over F_p

    FqElem make_raw(std::array<uint32_t, kMaxDegree> c) const { return FqElem(this, c); }

    uint32_t mod_inverse(uint32_t a) const {
        // p is small; a^(p-2) by repeated multiplication is fine.
        uint64_t r = 1, base = a % p_;
        uint32_t e = p_ - 2;
        while (e) {
            if (e & 1) r = (r * base) % p_;
            base = (base * base) % p_;
            e >>= 1;
        }
        return static_cast<uint32_t>(r);
    }

    // -- polynomial helpers over F_p (dense coefficient vectors) --------

    static void trim(std::vector<uint32_t>& v) {
        while (v.size() > 1 && v.back() == 0) v.pop_back();
    }
    std::vector<uint32_t> poly_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const {
        std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<uint64_t>(a[i]) * b[j];
        std::vector<uint32_t> out(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<uint32_t>(acc[i] % p_);
        trim(out);
        return out;
    }
    std::vector<uint32_t> poly_sub(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const {
        std::vector<uint32_t> out(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < out.size(); ++i) {
            uint32_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
            out[i] = (x + p_ - y) % p_;
        }
        trim(out);
        return out;
    }
    std::pair<std::vector<uint32_t>, std::vector<uint32_t>>
    poly_divmod(std::vector<uint32_t> num, const std::vector<uint32_t>& den) const {
        trim(num);
        std::vector<uint32_t> d = den;
        trim(d);
        if (d.size() == 1 && d[0] == 0) throw std::domain_error("poly division by zero");
        if (num.size() < d.size()) return {{0}, num};
        std::vector<uint32_t> quo(num.size() - d.size() + 1, 0);
        uint32_t lead_inv = mod_inverse(d.back());
        for (size_t shift = num.size() - d.size() + 1; shift-- > 0;) {
            uint32_t coef = static_cast<uint32_t>((static_cast<uint64_t>(num[shift + d.size() - 1]) * lead_inv) % p_);
            if (coef == 0) continue;
            quo[shift] = coef;
            for (size_t i = 0; i < d.size(); ++i) {
                uint64_t sub = (static_cast<uint64_t>(coef) * d[i]) % p_;
                num[shift + i] = static_cast<uint32_t>((num[shift + i] + p_ - sub) % p_);
            }
        }
        trim(num);
        return {quo, num};
    }

    bool poly_is_irreducible(const std::vector<uint32_t>& monic) const {
        // Trial division by all monic polynomials of degree <= deg/2.
        int deg = static_cast<int>(monic.size()) - 1;
        for (int d = 1; 2 * d <= deg; ++d) {
            uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (uint64_t v = 0; v < count; ++v) {
                std::vector<uint32_t> div(static_cast<size_t>(d) + 1, 0);
                uint64_t t = v;
                for (int i = 0; i < d; ++i) { div[static_cast<size_t>(i)] = static_cast<uint32_t>(t % p_); t /= p_; }
                div[static_cast<size_t>(d)] = 1;
                auto [quo, rem] = poly_divmod(monic, div);
                (void)quo;
                if (rem.size() == 1 && rem[0] == 0) return false;
            }
        }
        return true;
    }

    std::vector<uint32_t> smallest_irreducible() const {
        if (k_ == 1) return {0}; // modulus t: plain residues mod p
        uint64_t count = 1;
        for (int i = 0; i < k_; ++i) count *= p_;
        for (uint64_t v = 0; v < count; ++v) {
            std::vector<uint32_t> cand(static_cast<size_t>(k_) + 1, 0);
            uint64_t t = v;
            for (int i = 0; i < k_; ++i) { cand[static_cast<size_t>(i)] = static_cast<uint32_t>(t % p_); t /= p_; }
            cand[static_cast<size_t>(k_)] = 1;
            if (poly_is_irreducible(cand)) {
                cand.pop_back();
                return cand;
            }
        }
        throw std::logic_error("no irreducible polynomial found"); // unreachable
    }

    void build_reduction_rows() {
        // red_rows_[j] = t^{k+j} mod modulus, j = 0..k-2.
        red_rows_.assign(static_cast<size_t>(std::max(0, k_ - 1)), std::vector<uint32_t>(static_cast<size_t>(k_), 0));
        if (k_ == 1) return;
        std::vector<uint32_t> cur(static_cast<size_t>(k_), 0);
        for (int i = 0; i < k_; ++i) cur[static_cast<size_t>(i)] = (p_ - modulus_[static_cast<size_t>(i)]) % p_; // t^k
        red_rows_[0] = cur;
        for (int j = 1; j <= k_ - 2; ++j) {
            // multiply by t
            std::vector<uint32_t> nxt(static_cast<size_t>(k_), 0);
            uint32_t top = cur[static_cast<size_t>(k_ - 1)];
            for (int i = k_ - 1; i >= 1; --i) nxt[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
            nxt[0] = 0;
            if (top != 0)
                for (int i = 0; i < k_; ++i)
                    nxt[static_cast<size_t>(i)] =
                        (nxt[static_cast<size_t>(i)] + top * red_rows_[0][static_cast<size_t>(i)]) % p_;
            red_rows_[static_cast<size_t>(j)] = nxt;
            cur = nxt;
        }
    }

    void build_artin_schreier_matrix() {
        // Column i: coordinates of (t^i)^p - t^i. The map x -> x^p - x is
        // F_p-linear, so Artin-Schreier equations reduce to k x k solves.
        as_matrix_.assign(static_cast<size_t>(k_), std::vector<uint32_t>(static_cast<size_t>(k_), 0));
        for (int i = 0; i < k_; ++i) {
            std::array<uint32_t, kMaxDegree> c{};
            c[static_cast<size_t>(i)] = 1;
            FqElem ti(this, c);
            FqElem img = sub(frobenius_of(ti), ti);
            for (int r = 0; r < k_; ++r) as_matrix_[static_cast<size_t>(r)][static_cast<size_t>(i)] = img.coeff(r);
        }
    }

    FqElem frobenius_of(const FqElem& x) const {
        FqElem r = one();
        for (uint32_t i = 0; i < p_; ++i) r = mul(r, x);
        return r;
    }

public:
    /// All solutions of t^p - t = c in this field: empty, or exactly p
    /// solutions differing by F_p, sorted in canonical order.
    std::vector<FqElem> artin_schreier_solve(const FqElem& c) const {
        // Solve the F_p-linear system as_matrix * x = coords(c).
        int n = k_;
        std::vector<std::vector<uint32_t>> aug(static_cast<size_t>(n),
                                               std::vector<uint32_t>(static_cast<size_t>(n) + 1, 0));
        for (int r = 0; r < n; ++r) {
            for (int cidx = 0; cidx < n; ++cidx) aug[static_cast<size_t>(r)][static_cast<size_t>(cidx)] = as_matrix_[static_cast<size_t>(r)][static_cast<size_t>(cidx)];
            aug[static_cast<size_t>(r)][static_cast<size_t>(n)] = c.coeff(r);
        }
        std::vector<int> pivot_col(static_cast<size_t>(n), -1);
        int row = 0;
        for (int col = 0; col < n && row < n; ++col) {
            int pr = -1;
            for (int r = row; r < n; ++r)
                if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(aug[static_cast<size_t>(row)], aug[static_cast<size_t>(pr)]);
            uint32_t inv = mod_inverse(aug[static_cast<size_t>(row)][static_cast<size_t>(col)]);
            for (int j = col; j <= n; ++j)
                aug[static_cast<size_t>(row)][static_cast<size_t>(j)] =
                    static_cast<uint32_t>((static_cast<uint64_t>(aug[static_cast<size_t>(row)][static_cast<size_t>(j)]) * inv) % p_);
            for (int r = 0; r < n; ++r) {
                if (r == row) continue;
                uint32_t f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int j = col; j <= n; ++j) {
                    uint64_t sub = (static_cast<uint64_t>(f) * aug[static_cast<size_t>(row)][static_cast<size_t>(j)]) % p_;
                    aug[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                        static_cast<uint32_t>((aug[static_cast<size_t>(r)][static_cast<size_t>(j)] + p_ - sub) % p_);
                }
            }
            pivot_col[static_cast<size_t>(row)] = col;
            ++row;
        }
        for (int r = row; r < n; ++r)
            if (aug[static_cast<size_t>(r)][static_cast<size_t>(n)] != 0) return {}; // inconsistent: no solution in this field
        std::array<uint32_t, kMaxDegree> x0{};
        for (int r = 0; r < row; ++r)
            x0[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] = aug[static_cast<size_t>(r)][static_cast<size_t>(n)];
        FqElem base(this, x0);
        std::vector<FqElem> out;
        out.reserve(p_);
        for (uint32_t s = 0; s < p_; ++s) out.push_back(add(base, from_int(s)));
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline uint64_t FqElem::counting_value() const {
    uint64_t v = 0, scale = 1;
    int k = ctx_ ? ctx_->k() : kMaxDegree;
    uint64_t p = ctx_ ? ctx_->p() : 1u << 16;
    for (int i = 0; i < k; ++i) { v += coeffs_[static_cast<size_t>(i)] * scale; scale *= p; }
    return v;
}

inline FqElem FqElem::operator+(const FqElem& o) const { return ctx_->add(*this, o); }
inline FqElem FqElem::operator-(const FqElem& o) const { return ctx_->sub(*this, o); }
inline FqElem FqElem::operator*(const FqElem& o) const { return ctx_->mul(*this, o); }
inline FqElem FqElem::operator-() const { return ctx_->neg(*this); }
inline FqElem FqElem::inverse() const { return ctx_->inverse(*this); }

inline FqElem FqElem::pow(uint64_t e) const {
    FqElem r = ctx_->one(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline FqElem FqElem::frobenius() const { return pow(ctx_->p()); }

inline std::string FqElem::str() const {
    int k = ctx_->k();
    std::ostringstream os;
    bool first = true;
    for (int i = k - 1; i >= 0; --i) {
        uint32_t c = coeffs_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

inline FqElem FieldCtx::parse(const std::string& s) const {
    // Terms separated by + or -, each "c", "t", "t^e", "c*t", or "c*t^e".
    FqElem acc = zero();
    size_t i = 0;
    int sign = 1;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { sign = s[i] == '-' ? -1 : 1; ++i; }
    while (i < s.size()) {
        skip_ws();
        int64_t coef = 1;
        bool saw_digits = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coef = coef * 10 + (s[i] - '0');
                ++i;
            }
            saw_digits = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') { ++i; skip_ws(); }
        int deg = 0;
        if (i < s.size() && s[i] == 't') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                    throw std::invalid_argument("parse: exponent expected in '" + s + "'");
                deg = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                    deg = deg * 10 + (s[i] - '0');
                    ++i;
                }
            }
        } else if (!saw_digits) {
            throw std::invalid_argument("parse: malformed field element '" + s + "'");
        }
        if (deg >= k_) throw std::invalid_argument("parse: degree " + std::to_string(deg) + " out of range for k=" + std::to_string(k_));
        std::vector<int64_t> v(static_cast<size_t>(deg) + 1, 0);
        v[static_cast<size_t>(deg)] = sign * coef;
        acc = add(acc, from_coeffs(v));
        skip_ws();
        if (i >= s.size()) break;
        if (s[i] == '+') { sign = 1; ++i; }
        else if (s[i] == '-') { sign = -1; ++i; }
        else throw std::invalid_argument("parse: unexpected character '" + std::string(1, s[i]) + "' in '" + s + "'");
    }
    return acc;
}

/// Deterministic factory: the context for F_{p^k}.
inline std::shared_ptr<const FieldCtx> field_make(uint32_t p, int k) {
    return std::make_shared<const FieldCtx>(p, k);
}

// ---------------------------------------------------------------------------
// Dense exact linear algebra
// ---------------------------------------------------------------------------

class Matrix {
public:
    Matrix() : ctx_(nullptr), rows_(0), cols_(0) {}
    Matrix(const FieldCtx* ctx, int rows, int cols)
        : ctx_(ctx), rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), ctx->zero()) {}

    static Matrix identity(const FieldCtx* ctx, int n) {
        Matrix m(ctx, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = ctx->one();
        return m;
    }

    const FieldCtx* ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FqElem& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    const FqElem& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix r(ctx_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int l = 0; l < cols_; ++l) {
                const FqElem& a = at(i, l);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    const FqElem& b = o.at(l, j);
                    if (b.is_zero()) continue;
                    r.at(i, j) += a * b;
                }
            }
        return r;
    }
    Matrix scaled(const FqElem& s) const {
        Matrix r = *this;
        for (auto& x : r.data_) x = x * s;
        return r;
    }
    Matrix transpose() const {
        Matrix r(ctx_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    Matrix power(uint64_t e) const {
        if (rows_ != cols_) throw std::invalid_argument("matrix power: not square");
        Matrix r = identity(ctx_, rows_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }
    FqElem trace() const {
        FqElem t = ctx_->zero();
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
        return t;
    }
    std::vector<FqElem> apply(const std::vector<FqElem>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("apply: size mismatch");
        std::vector<FqElem> out(static_cast<size_t>(rows_), ctx_->zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
                    out[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
        return out;
    }
    /// Horizontal stack [A | B].
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
        Matrix r(a.ctx(), a.rows(), a.cols() + b.cols());
        for (int i = 0; i < a.rows(); ++i) {
            for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
        }
        return r;
    }
    /// Vertical stack [A; B].
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols() != b.cols()) throw std::invalid_argument("vstack: col mismatch");
        Matrix r(a.ctx(), a.rows() + b.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
        return r;
    }
    std::vector<FqElem> column(int j) const {
        std::vector<FqElem> v(static_cast<size_t>(rows_), ctx_->zero());
        for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = at(i, j);
        return v;
    }
    static Matrix from_columns(const FieldCtx* ctx, const std::vector<std::vector<FqElem>>& cols) {
        int r = cols.empty() ? 0 : static_cast<int>(cols[0].size());
        Matrix m(ctx, r, static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (int i = 0; i < r; ++i) m.at(i, static_cast<int>(j)) = cols[j][static_cast<size_t>(i)];
        return m;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }
    const FieldCtx* ctx_;
    int rows_, cols_;
    std::vector<FqElem> data_;
};

/// Row-reduced echelon form with deterministic pivoting (first nonzero entry
/// in column order, rows scanned top-down). Returns the pivot columns.
inline std::vector<int> row_reduce(Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
        FqElem inv = m.at(row, col).inverse();
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            FqElem f = m.at(r, col);
            for (int j = col; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(row_reduce(m).size()); }

/// Columns form a basis of the null space {x : Mx = 0}.
inline Matrix kernel_basis(Matrix m) {
    const FieldCtx* ctx = m.ctx();
    std::vector<int> pivots = row_reduce(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    Matrix ker(ctx, m.cols(), static_cast<int>(free_cols.size()));
    for (size_t fj = 0; fj < free_cols.size(); ++fj) {
        int fc = free_cols[fj];
        ker.at(fc, static_cast<int>(fj)) = ctx->one();
        for (size_t r = 0; r < pivots.size(); ++r)
            ker.at(pivots[r], static_cast<int>(fj)) = -m.at(static_cast<int>(r), fc);
    }
    return ker;
}

/// One solution of Mx = rhs (multi-column rhs solved column-wise), or nullopt
/// when the system is inconsistent.
inline std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
    if (m.rows() != rhs.rows()) throw std::invalid_argument("solve: row mismatch");
    Matrix aug = Matrix::hstack(m, rhs);
    std::vector<int> pivots = row_reduce(aug);
    // Any pivot landing in the rhs block certifies inconsistency.
    for (int c : pivots)
        if (c >= m.cols()) return std::nullopt;
    Matrix x(m.ctx(), m.cols(), rhs.cols());
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < rhs.cols(); ++j) x.at(pivots[r], j) = aug.at(static_cast<int>(r), m.cols() + j);
    return x;
}

inline bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix::identity(m.ctx(), m.rows()));
    if (!x) return std::nullopt;
    // solve() returns some preimage; verify it is a two-sided inverse.
    if (!((*x) * m == Matrix::identity(m.ctx(), m.rows()))) return std::nullopt;
    return x;
}

} // namespace superverma::gf
