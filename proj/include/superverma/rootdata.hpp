#pragma once

// Root systems for the type I families gl(m|n), sl(m|n), osp(2|2n): positive
// even/odd roots, the invariant bilinear form, rho and rho_0, the Weyl group
// of the even part with its dot action, the weight set Lambda_chi, and the
// polynomials P_0, P_1, P evaluated on weights.
//
// Roots and weights live in epsilon/delta coordinates ("slots"): the epsilon
// slots first, then the delta slots. Roots are integer vectors; weights are
// field vectors. The form has signature +1 on epsilon slots, -1 on delta
// slots. rho and rho_0 have half-integer coordinates and are stored doubled.

#include "gf.hpp"

#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace superverma::rootdata {

using gf::FieldCtx;
using gf::FqElem;

enum class Family { gl, sl, osp2 };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::gl: return "gl";
        case Family::sl: return "sl";
        case Family::osp2: return "osp2";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "gl") return Family::gl;
    if (s == "sl") return Family::sl;
    if (s == "osp2" || s == "osp") return Family::osp2;
    throw std::invalid_argument("unknown family '" + s + "'");
}

using Root = std::vector<int>; // integer slot vector

/// Weight: values of lambda on the slot functionals (epsilon then delta).
struct Weight {
    std::vector<FqElem> coords;

    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const {
        for (size_t i = 0; i < coords.size(); ++i) {
            uint64_t a = coords[i].counting_value(), b = o.coords[i].counting_value();
            if (a != b) return a < b;
        }
        return false;
    }
    std::string str() const {
        std::string s;
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += coords[i].str();
        }
        return s;
    }
};

/// Signed slot permutation: slot i goes to slot perm[i] with sign sign[i].
struct WeylElement {
    std::vector<int> perm;
    std::vector<int> sign;

    std::vector<FqElem> apply(const std::vector<FqElem>& x) const {
        std::vector<FqElem> out(x.size());
        for (size_t i = 0; i < x.size(); ++i) {
            FqElem v = x[i];
            if (sign[i] < 0) v = -v;
            out[static_cast<size_t>(perm[i])] = v;
        }
        return out;
    }
    Root apply(const Root& x) const {
        Root out(x.size(), 0);
        for (size_t i = 0; i < x.size(); ++i) out[static_cast<size_t>(perm[i])] = sign[i] * x[i];
        return out;
    }
    bool is_identity() const {
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != static_cast<int>(i) || sign[i] != 1) return false;
        return true;
    }
};

/// Raised when an Artin-Schreier equation has no solution in the working
/// field; carries the failing toral coordinate.
struct ExtendFieldError : std::runtime_error {
    int coordinate;
    explicit ExtendFieldError(int coord)
        : std::runtime_error("artin-schreier equation unsolvable at toral coordinate " +
                             std::to_string(coord) + ": extend k"),
          coordinate(coord) {}
};

class RootData {
public:
    Family family;
    int m = 0, n = 0;
    int slots = 0;              // epsilon slots + delta slots
    int eps_slots = 0;          // number of epsilon slots
    int rank = 0;               // dim of the Cartan (toral basis size)
    std::vector<Root> pos_even; // Delta_0^+
    std::vector<Root> pos_odd;  // Delta_1^+
    std::vector<Root> simple;   // distinguished simple system Pi
    std::vector<int> rho2;      // 2*rho
    std::vector<int> rho0_2;    // 2*rho_0
    std::vector<int> form_sig;  // +1 on epsilon slots, -1 on delta slots
    int coxeter = 0;            // Coxeter number of the even part

    RootData(Family f, int m_, int n_) : family(f), m(m_), n(n_) {
        switch (f) {
            case Family::gl:
            case Family::sl: build_gl_sl(); break;
            case Family::osp2: build_osp2(); break;
        }
        form_sig.assign(static_cast<size_t>(slots), 1);
        for (int i = eps_slots; i < slots; ++i) form_sig[static_cast<size_t>(i)] = -1;
        compute_rho();
        sort_roots();
    }

    // -- form and root helpers -------------------------------------------

    int64_t form_int(const Root& a, const Root& b) const {
        check_len(a); check_len(b);
        int64_t s = 0;
        for (int i = 0; i < slots; ++i) s += static_cast<int64_t>(form_sig[static_cast<size_t>(i)]) * a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
        return s;
    }
    FqElem form(const std::vector<FqElem>& a, const Root& b) const {
        if (static_cast<int>(a.size()) != slots || static_cast<int>(b.size()) != slots)
            throw std::invalid_argument("bilinear: coordinate-length mismatch");
        const FieldCtx* F = a[0].ctx();
        FqElem s = F->zero();
        for (int i = 0; i < slots; ++i) {
            if (b[static_cast<size_t>(i)] == 0) continue;
            s += a[static_cast<size_t>(i)] * F->from_int(form_sig[static_cast<size_t>(i)] * b[static_cast<size_t>(i)]);
        }
        return s;
    }
    FqElem form(const std::vector<FqElem>& a, const std::vector<FqElem>& b) const {
        if (static_cast<int>(a.size()) != slots || static_cast<int>(b.size()) != slots)
            throw std::invalid_argument("bilinear: coordinate-length mismatch");
        const FieldCtx* F = a[0].ctx();
        FqElem s = F->zero();
        for (int i = 0; i < slots; ++i) {
            FqElem t = a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
            s = form_sig[static_cast<size_t>(i)] > 0 ? s + t : s - t;
        }
        return s;
    }
    FqElem form(const Weight& a, const Root& b) const { return form(a.coords, b); }

    std::vector<FqElem> field_vector(const std::vector<int>& v, const FieldCtx* F) const {
        std::vector<FqElem> out;
        out.reserve(v.size());
        for (int x : v) out.push_back(F->from_int(x));
        return out;
    }
    /// rho as a field vector (2 is invertible since p > 2).
    std::vector<FqElem> rho_field(const FieldCtx* F) const {
        auto v = field_vector(rho2, F);
        FqElem h = F->half();
        for (auto& x : v) x = x * h;
        return v;
    }
    std::vector<FqElem> rho0_field(const FieldCtx* F) const {
        auto v = field_vector(rho0_2, F);
        FqElem h = F->half();
        for (auto& x : v) x = x * h;
        return v;
    }

    /// The even roots of Pi; for these families this is exactly the simple
    /// system of Delta_0^+.
    std::vector<Root> simple_even() const {
        std::vector<Root> out;
        for (const auto& a : simple)
            if (!is_odd_root(a)) out.push_back(a);
        return out;
    }
    bool is_odd_root(const Root& a) const {
        // Odd roots mix the epsilon and delta blocks.
        bool eps = false, del = false;
        for (int i = 0; i < eps_slots; ++i) eps |= a[static_cast<size_t>(i)] != 0;
        for (int i = eps_slots; i < slots; ++i) del |= a[static_cast<size_t>(i)] != 0;
        return eps && del;
    }

    std::string root_str(const Root& a) const {
        std::string s;
        for (int i = 0; i < slots; ++i) {
            int c = a[static_cast<size_t>(i)];
            if (c == 0) continue;
            if (c > 0 && !s.empty()) s += "+";
            if (c == -1) s += "-";
            else if (c != 1) s += std::to_string(c);
            s += (i < eps_slots) ? "e" + std::to_string(i + 1) : "d" + std::to_string(i - eps_slots + 1);
        }
        return s.empty() ? "0" : s;
    }

    // -- Weyl group --------------------------------------------------------

    /// The Weyl group of the even part, enumerated deterministically:
    /// S_m x S_n for gl/sl, the hyperoctahedral group on delta slots for osp2.
    std::vector<WeylElement> weyl_group() const {
        std::vector<std::vector<int>> eps_perms, del_perms;
        int ne = (family == Family::osp2) ? 1 : m;
        int nd = n;
        eps_perms = all_perms(ne);
        del_perms = all_perms(nd);
        std::vector<WeylElement> out;
        int sign_patterns = (family == Family::osp2) ? (1 << nd) : 1;
        for (const auto& pe : eps_perms)
            for (const auto& pd : del_perms)
                for (int mask = 0; mask < sign_patterns; ++mask) {
                    WeylElement w;
                    w.perm.resize(static_cast<size_t>(slots));
                    w.sign.assign(static_cast<size_t>(slots), 1);
                    if (family == Family::osp2) {
                        w.perm[0] = 0;
                    } else {
                        for (int i = 0; i < ne; ++i) w.perm[static_cast<size_t>(i)] = pe[static_cast<size_t>(i)];
                    }
                    for (int j = 0; j < nd; ++j) {
                        w.perm[static_cast<size_t>(eps_slots + j)] = eps_slots + pd[static_cast<size_t>(j)];
                        if (mask & (1 << j)) w.sign[static_cast<size_t>(eps_slots + j)] = -1;
                    }
                    out.push_back(std::move(w));
                }
        return out;
    }

    /// w.lambda = w(lambda + rho_0) - rho_0 (equals the rho form: w fixes rho_1).
    Weight dot_action(const WeylElement& w, const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto r0 = rho0_field(F);
        std::vector<FqElem> v(lam.coords);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] += r0[static_cast<size_t>(i)];
        v = w.apply(v);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] -= r0[static_cast<size_t>(i)];
        return Weight{std::move(v)};
    }
    Weight dot_action_via_rho(const WeylElement& w, const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto r = rho_field(F);
        std::vector<FqElem> v(lam.coords);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] += r[static_cast<size_t>(i)];
        v = w.apply(v);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] -= r[static_cast<size_t>(i)];
        return Weight{std::move(v)};
    }

    /// Dot-action orbit, deduplicated, in canonical order.
    std::vector<Weight> weyl_orbit(const Weight& lam) const {
        std::set<Weight> seen;
        for (const auto& w : weyl_group()) seen.insert(dot_action(w, lam));
        return {seen.begin(), seen.end()};
    }

    // -- typicality and the P polynomials ---------------------------------

    bool is_typical(const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto lr = plus_rho(lam);
        for (const auto& b : pos_odd)
            if (form(lr, b) == F->zero()) return false;
        return true;
    }

    /// (lambda + rho | alpha) != 0 for every positive root of either parity.
    bool is_p_regular(const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto lr = plus_rho(lam);
        for (const auto& a : pos_even)
            if (form(lr, a) == F->zero()) return false;
        for (const auto& b : pos_odd)
            if (form(lr, b) == F->zero()) return false;
        return true;
    }

    enum class PKind { P0, P1, P };

    FqElem eval_P(const Weight& lam, PKind which) const {
        const FieldCtx* F = lam.coords[0].ctx();
        FqElem out = F->one();
        if (which == PKind::P1 || which == PKind::P) {
            auto lr = plus_rho(lam);
            for (const auto& b : pos_odd) out *= form(lr, b);
        }
        if (which == PKind::P0 || which == PKind::P) {
            auto lr0 = plus_rho0(lam);
            for (const auto& a : pos_even)
                out *= form(lr0, a).pow(F->p() - 1) - F->one();
        }
        return out;
    }

    // -- Lambda_chi --------------------------------------------------------

    /// All lambda with lambda(h)^p - lambda(h) = chi(h)^p on the toral basis;
    /// chi_h holds the values of chi on that basis (length = rank). Exactly
    /// p^rank weights when every coordinate is solvable, in odometer order
    /// (last coordinate fastest).
    std::vector<Weight> lambda_chi(const FieldCtx* F, const std::vector<FqElem>& chi_h) const {
        if (static_cast<int>(chi_h.size()) != rank)
            throw std::invalid_argument("lambda_chi: expected " + std::to_string(rank) + " toral values");
        std::vector<std::vector<FqElem>> sols(static_cast<size_t>(rank));
        for (int i = 0; i < rank; ++i) {
            sols[static_cast<size_t>(i)] = F->artin_schreier_solve(chi_h[static_cast<size_t>(i)].pow(F->p()));
            if (sols[static_cast<size_t>(i)].empty()) throw ExtendFieldError(i + 1);
        }
        std::vector<Weight> out;
        std::vector<size_t> idx(static_cast<size_t>(rank), 0);
        while (true) {
            std::vector<FqElem> toral(static_cast<size_t>(rank));
            for (int i = 0; i < rank; ++i) toral[static_cast<size_t>(i)] = sols[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
            out.push_back(weight_from_toral(toral, F));
            int pos = rank - 1;
            while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == sols[static_cast<size_t>(pos)].size()) {
                idx[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        return out;
    }

    /// Slot coordinates from values on the toral basis. For gl and osp2 the
    /// toral basis is dual to the slot functionals; for sl the values sit on
    /// the simple coroots and are lifted with last delta slot set to zero
    /// (the lift only shifts lambda by a multiple of the supertrace
    /// character, which pairs to zero with every root).
    Weight weight_from_toral(const std::vector<FqElem>& toral, const FieldCtx* F) const {
        if (static_cast<int>(toral.size()) != rank)
            throw std::invalid_argument("weight_from_toral: expected " + std::to_string(rank) + " values");
        if (family != Family::sl) return Weight{toral};
        std::vector<FqElem> c(static_cast<size_t>(slots), F->zero());
        // coroot values: a_i - a_{i+1} (i < m), a_m + b_1, b_j - b_{j+1} (j < n)
        for (int j = n - 1; j >= 1; --j)
            c[static_cast<size_t>(m + j - 1)] = toral[static_cast<size_t>(m + j - 1)] + c[static_cast<size_t>(m + j)];
        c[static_cast<size_t>(m - 1)] = toral[static_cast<size_t>(m - 1)] - c[static_cast<size_t>(m)];
        for (int i = m - 2; i >= 0; --i)
            c[static_cast<size_t>(i)] = toral[static_cast<size_t>(i)] + c[static_cast<size_t>(i + 1)];
        return Weight{std::move(c)};
    }

    /// Values of lambda on the toral basis (inverse of weight_from_toral).
    std::vector<FqElem> toral_values(const Weight& lam) const {
        if (family != Family::sl) return lam.coords;
        std::vector<FqElem> v(static_cast<size_t>(rank));
        for (int i = 0; i + 1 < m; ++i) v[static_cast<size_t>(i)] = lam.coords[static_cast<size_t>(i)] - lam.coords[static_cast<size_t>(i + 1)];
        v[static_cast<size_t>(m - 1)] = lam.coords[static_cast<size_t>(m - 1)] + lam.coords[static_cast<size_t>(m)];
        for (int j = 0; j + 1 < n; ++j)
            v[static_cast<size_t>(m + j)] = lam.coords[static_cast<size_t>(m + j)] - lam.coords[static_cast<size_t>(m + j + 1)];
        return v;
    }

    Weight parse_weight(const FieldCtx* F, const std::string& text) const {
        std::vector<FqElem> coords;
        std::string cur;
        for (char ch : text) {
            if (ch == ',') {
                coords.push_back(F->parse(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) coords.push_back(F->parse(cur));
        if (static_cast<int>(coords.size()) == rank && family == Family::sl)
            return weight_from_toral(coords, F);
        if (static_cast<int>(coords.size()) != slots)
            throw std::invalid_argument("weight '" + text + "': expected " + std::to_string(slots) + " coordinates");
        return Weight{std::move(coords)};
    }

    std::vector<FqElem> plus_rho(const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto r = rho_field(F);
        std::vector<FqElem> v(lam.coords);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] += r[static_cast<size_t>(i)];
        return v;
    }
    std::vector<FqElem> plus_rho0(const Weight& lam) const {
        const FieldCtx* F = lam.coords[0].ctx();
        auto r = rho0_field(F);
        std::vector<FqElem> v(lam.coords);
        for (int i = 0; i < slots; ++i) v[static_cast<size_t>(i)] += r[static_cast<size_t>(i)];
        return v;
    }

private:
    void check_len(const Root& a) const {
        if (static_cast<int>(a.size()) != slots) throw std::invalid_argument("root length mismatch");
    }

    static std::vector<std::vector<int>> all_perms(int n) {
        std::vector<int> base(static_cast<size_t>(n));
        std::iota(base.begin(), base.end(), 0);
        std::vector<std::vector<int>> out;
        do out.push_back(base);
        while (std::next_permutation(base.begin(), base.end()));
        return out;
    }

    Root unit(int i, int sign) const {
        Root r(static_cast<size_t>(slots), 0);
        r[static_cast<size_t>(i)] = sign;
        return r;
    }
    Root diff(int i, int j) const {
        Root r(static_cast<size_t>(slots), 0);
        r[static_cast<size_t>(i)] += 1;
        r[static_cast<size_t>(j)] -= 1;
        return r;
    }
    Root sum(int i, int j) const {
        Root r(static_cast<size_t>(slots), 0);
        r[static_cast<size_t>(i)] += 1;
        r[static_cast<size_t>(j)] += 1;
        return r;
    }

    void build_gl_sl() {
        if (m < 1 || n < 1) throw std::invalid_argument("gl/sl(m|n): m, n >= 1 required");
        if (family == Family::sl && m + n < 2) throw std::invalid_argument("sl(m|n): m+n >= 2");
        slots = m + n;
        eps_slots = m;
        rank = (family == Family::sl) ? m + n - 1 : m + n;
        coxeter = std::max(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) pos_even.push_back(diff(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pos_even.push_back(diff(m + i, m + j));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) pos_odd.push_back(diff(i, m + j));
        for (int i = 0; i + 1 < m; ++i) simple.push_back(diff(i, i + 1));
        simple.push_back(diff(m - 1, m));
        for (int j = 0; j + 1 < n; ++j) simple.push_back(diff(m + j, m + j + 1));
    }

    void build_osp2() {
        if (n < 1) throw std::invalid_argument("osp(2|2n): n >= 1 required");
        m = 1;
        slots = 1 + n;
        eps_slots = 1;
        rank = 1 + n;
        coxeter = 2 * n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                pos_even.push_back(diff(1 + i, 1 + j));
                pos_even.push_back(sum(1 + i, 1 + j));
            }
        for (int i = 0; i < n; ++i) {
            Root r = unit(1 + i, 2);
            pos_even.push_back(r);
        }
        for (int i = 0; i < n; ++i) {
            pos_odd.push_back(diff(0, 1 + i)); // e - d_i
            pos_odd.push_back(sum(0, 1 + i));  // e + d_i
        }
        simple.push_back(diff(0, 1));
        for (int j = 0; j + 1 < n; ++j) simple.push_back(diff(1 + j, 1 + j + 1));
        simple.push_back(unit(n, 2));
    }

    void compute_rho() {
        rho2.assign(static_cast<size_t>(slots), 0);
        rho0_2.assign(static_cast<size_t>(slots), 0);
        for (const auto& a : pos_even)
            for (int i = 0; i < slots; ++i) rho0_2[static_cast<size_t>(i)] += a[static_cast<size_t>(i)];
        rho2 = rho0_2;
        for (const auto& b : pos_odd)
            for (int i = 0; i < slots; ++i) rho2[static_cast<size_t>(i)] -= b[static_cast<size_t>(i)];
    }

    void sort_roots() {
        std::sort(pos_even.begin(), pos_even.end());
        std::sort(pos_odd.begin(), pos_odd.end());
    }
};

/// Factory matching the CLI surface; for osp2 the size parameter is n and the
/// algebra is osp(2|2n).
inline RootData root_data(Family family, int m, int n) {
    if (family == Family::osp2) return RootData(family, 1, n > 0 ? n : m);
    return RootData(family, m, n);
}

} // namespace superverma::rootdata
