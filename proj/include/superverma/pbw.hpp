#pragma once

// The reduced enveloping superalgebra U_chi(g) as a rewriting system.
//
// Monomials are exponent vectors over the algebra basis in the canonical
// triangular order (negative even, negative odd, toral, positive odd,
// positive even). Exponents of even and toral elements live in [0, p), odd
// exponents in {0, 1}. Straightening rewrites an arbitrary word of basis
// letters into this basis:
//   (i)   x y -> (-1)^{|x||y|} y x + [x, y]      for out-of-order pairs,
//   (ii)  x^p -> x^[p] + chi(x)^p               for even letters,
//   (iii) y^2 -> (1/2) [y, y]                   for odd letters.
// Each rewrite lowers (word length, inversion count) lexicographically, so
// the process terminates; confluence is exercised by randomized-strategy
// tests rather than assumed.

#include "liesuper.hpp"

#include <cstdint>
#include <functional>
#include <map>

namespace superverma::pbw {

using gf::FqElem;
using liesuper::Coords;
using liesuper::Group;
using liesuper::PChar;
using liesuper::SuperAlgebra;
using rootdata::Weight;

using Mono = std::vector<uint8_t>;  // exponent per basis index
using Word = std::vector<int>;      // sequence of basis indices
using Terms = std::map<Mono, FqElem>;

/// Priority ranks defining which letter order counts as sorted.
struct Order {
    std::vector<int> rank; // rank[basisIndex]; strictly increasing = sorted

    /// The canonical triangular order: basis index order itself.
    static Order canonical(const SuperAlgebra& A) {
        Order o;
        o.rank.resize(static_cast<size_t>(A.dim()));
        for (int i = 0; i < A.dim(); ++i) o.rank[static_cast<size_t>(i)] = i;
        return o;
    }
    /// Induction order: negative odd letters first, then the even part, then
    /// positive odd. Used to split U(g) as U(g_{-1}) (x) U(g_+).
    static Order psi_induction(const SuperAlgebra& A) {
        Order o;
        o.rank.resize(static_cast<size_t>(A.dim()));
        int next = 0;
        for (Group g : {Group::NegOdd, Group::NegEven, Group::Toral, Group::PosEven, Group::PosOdd})
            for (int i : A.group_indices(g)) o.rank[static_cast<size_t>(i)] = next++;
        return o;
    }
};

/// Picks which of the current violations to rewrite; default leftmost.
using Strategy = std::function<size_t(size_t violation_count)>;

namespace detail {

struct Violation {
    enum Kind { Swap, OddSquare, EvenPower } kind;
    size_t pos;
};

inline std::vector<Violation> find_violations(const SuperAlgebra& A, const Order& ord, const Word& w,
                                              uint32_t p) {
    std::vector<Violation> out;
    size_t i = 0;
    while (i + 1 < w.size()) {
        int a = w[i], b = w[i + 1];
        if (ord.rank[static_cast<size_t>(a)] > ord.rank[static_cast<size_t>(b)]) {
            out.push_back({Violation::Swap, i});
            ++i;
            continue;
        }
        if (a == b) {
            if (!A.is_even(a)) {
                out.push_back({Violation::OddSquare, i});
                ++i;
                continue;
            }
            size_t run = 2;
            while (i + run < w.size() && w[i + run] == a) ++run;
            if (run >= p) out.push_back({Violation::EvenPower, i});
            i += run - 1;
            continue;
        }
        ++i;
    }
    return out;
}

} // namespace detail

/// Straighten a word of basis letters into canonical monomials with
/// coefficients; the quotient relations use the given p-character.
inline Terms straighten_word(const SuperAlgebra& A, const PChar& chi, const Word& word,
                             const Order& ord, const Strategy& strategy = {}) {
    const gf::FieldCtx* F = A.F();
    const uint32_t p = A.p();
    const FqElem half = F->half();
    Terms out;
    std::vector<std::pair<Word, FqElem>> work;
    work.emplace_back(word, F->one());
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        if (c.is_zero()) continue;
        auto viols = detail::find_violations(A, ord, w, p);
        if (viols.empty()) {
            Mono m(static_cast<size_t>(A.dim()), 0);
            for (int letter : w) m[static_cast<size_t>(letter)]++;
            auto it = out.find(m);
            if (it == out.end()) out.emplace(std::move(m), c);
            else {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
            continue;
        }
        size_t pick = strategy ? strategy(viols.size()) % viols.size() : 0;
        const auto v = viols[pick];
        const size_t i = v.pos;
        switch (v.kind) {
            case detail::Violation::Swap: {
                int x = w[i], y = w[i + 1];
                bool both_odd = !A.is_even(x) && !A.is_even(y);
                Word swapped = w;
                std::swap(swapped[i], swapped[i + 1]);
                work.emplace_back(std::move(swapped), both_odd ? -c : c);
                const Coords& br = A.bracket_basis(x, y);
                for (int t = 0; t < A.dim(); ++t) {
                    if (br[static_cast<size_t>(t)].is_zero()) continue;
                    Word shorter;
                    shorter.reserve(w.size() - 1);
                    shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(i));
                    shorter.push_back(t);
                    shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                    work.emplace_back(std::move(shorter), c * br[static_cast<size_t>(t)]);
                }
                break;
            }
            case detail::Violation::OddSquare: {
                int y = w[i];
                const Coords& br = A.bracket_basis(y, y); // = 2 y^2 in U(g)
                for (int t = 0; t < A.dim(); ++t) {
                    if (br[static_cast<size_t>(t)].is_zero()) continue;
                    Word shorter;
                    shorter.reserve(w.size() - 1);
                    shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(i));
                    shorter.push_back(t);
                    shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                    work.emplace_back(std::move(shorter), c * half * br[static_cast<size_t>(t)]);
                }
                break;
            }
            case detail::Violation::EvenPower: {
                int x = w[i];
                Word rest;
                rest.reserve(w.size() - p);
                rest.insert(rest.end(), w.begin(), w.begin() + static_cast<long>(i));
                rest.insert(rest.end(), w.begin() + static_cast<long>(i) + p, w.end());
                const Coords& pp = A.p_power_basis(x);
                for (int t = 0; t < A.dim(); ++t) {
                    if (pp[static_cast<size_t>(t)].is_zero()) continue;
                    Word mid = rest;
                    mid.insert(mid.begin() + static_cast<long>(i), t);
                    work.emplace_back(std::move(mid), c * pp[static_cast<size_t>(t)]);
                }
                FqElem cv = A.chi_value(chi, x);
                if (!cv.is_zero()) work.emplace_back(std::move(rest), c * cv.pow(p));
                break;
            }
        }
    }
    return out;
}

/// Element of U_chi(g) in the canonical PBW basis.
class AlgebraElem {
public:
    AlgebraElem(const SuperAlgebra* A, PChar chi) : A_(A), chi_(std::move(chi)) {}

    static AlgebraElem one(const SuperAlgebra& A, const PChar& chi) {
        AlgebraElem e(&A, chi);
        e.terms_.emplace(Mono(static_cast<size_t>(A.dim()), 0), A.F()->one());
        return e;
    }
    static AlgebraElem zero(const SuperAlgebra& A, const PChar& chi) { return AlgebraElem(&A, chi); }
    static AlgebraElem generator(const SuperAlgebra& A, const PChar& chi, int basisIdx) {
        return from_word(A, chi, Word{basisIdx});
    }
    /// Image in U_chi(g) of an ordered product of generators.
    static AlgebraElem from_word(const SuperAlgebra& A, const PChar& chi, const Word& word,
                                 const Strategy& strategy = {}) {
        AlgebraElem e(&A, chi);
        e.terms_ = straighten_word(A, chi, word, Order::canonical(A), strategy);
        return e;
    }

    const SuperAlgebra& algebra() const { return *A_; }
    const PChar& chi() const { return chi_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    AlgebraElem operator+(const AlgebraElem& o) const {
        require_compatible(o);
        AlgebraElem r = *this;
        for (const auto& [m, c] : o.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) r.terms_.emplace(m, c);
            else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }
    AlgebraElem operator-(const AlgebraElem& o) const { return *this + o.scaled(-A_->F()->one()); }
    AlgebraElem scaled(const FqElem& s) const {
        AlgebraElem r(A_, chi_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
        return r;
    }

    /// Bilinear extension of straightening: concatenate monomial words.
    AlgebraElem operator*(const AlgebraElem& o) const {
        require_compatible(o);
        AlgebraElem r(A_, chi_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                Word w = word_of(ma);
                Word wb = word_of(mb);
                w.insert(w.end(), wb.begin(), wb.end());
                Terms prod = straighten_word(*A_, chi_, w, Order::canonical(*A_));
                FqElem s = ca * cb;
                for (const auto& [m, c] : prod) {
                    auto it = r.terms_.find(m);
                    FqElem add = c * s;
                    if (it == r.terms_.end()) r.terms_.emplace(m, add);
                    else {
                        it->second += add;
                        if (it->second.is_zero()) r.terms_.erase(it);
                    }
                }
            }
        return r;
    }

    bool operator==(const AlgebraElem& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElem& o) const { return !(*this == o); }

    /// Expand a monomial back into its letter word (canonical order).
    static Word word_of_mono(const Mono& m) {
        Word w;
        for (size_t i = 0; i < m.size(); ++i)
            for (uint8_t rep = 0; rep < m[i]; ++rep) w.push_back(static_cast<int>(i));
        return w;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string cs = c.str();
            std::string ms = mono_str(*A_, m);
            if (ms.empty()) s += cs;
            else if (cs == "1") s += ms;
            else s += (cs.find('+') != std::string::npos ? "(" + cs + ")" : cs) + "*" + ms;
        }
        return s;
    }

    static std::string mono_str(const SuperAlgebra& A, const Mono& m) {
        std::string s;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += " * ";
            s += A.basis[i].label + "^" + std::to_string(static_cast<int>(m[i]));
        }
        return s;
    }

private:
    Word word_of(const Mono& m) const { return word_of_mono(m); }
    void require_compatible(const AlgebraElem& o) const {
        if (A_ != o.A_) throw std::invalid_argument("algebra elements over different algebras");
        if (chi_ != o.chi_) throw std::invalid_argument("algebra elements over different p-characters");
    }
    const SuperAlgebra* A_;
    PChar chi_;
    Terms terms_;
};

inline AlgebraElem straighten_product(const SuperAlgebra& A, const PChar& chi, const Word& word,
                                      const Strategy& strategy = {}) {
    return AlgebraElem::from_word(A, chi, word, strategy);
}

enum class TKind { Plus, Minus, PlusMinus };

/// T_+ / T_- : ordered products of all positive / negative odd root vectors
/// (canonical order); PlusMinus is the straightened product T_+ T_-.
inline AlgebraElem build_T(const SuperAlgebra& A, const PChar& chi, TKind which) {
    Word w;
    if (which == TKind::Plus || which == TKind::PlusMinus)
        for (int i : A.group_indices(Group::PosOdd)) w.push_back(i);
    if (which == TKind::Minus || which == TKind::PlusMinus)
        for (int i : A.group_indices(Group::NegOdd)) w.push_back(i);
    return AlgebraElem::from_word(A, chi, w);
}

/// Element of U_chi(h): toral exponent tuples -> coefficients.
struct HPolynomial {
    std::map<std::vector<uint8_t>, FqElem> terms;

    bool operator==(const HPolynomial& o) const { return terms == o.terms; }
};

/// Projection to U(h) along the PBW decomposition: drop every term whose
/// support leaves the toral block. For weight-zero inputs such as T_+ T_-
/// this is the polynomial part modulo U n^+.
inline HPolynomial reduce_mod_n_plus(const AlgebraElem& a) {
    const SuperAlgebra& A = a.algebra();
    int tb = A.toral_begin(), te = A.toral_end();
    HPolynomial out;
    for (const auto& [m, c] : a.terms()) {
        bool pure_h = true;
        for (int i = 0; i < A.dim() && pure_h; ++i)
            if (m[static_cast<size_t>(i)] != 0 && (i < tb || i >= te)) pure_h = false;
        if (!pure_h) continue;
        std::vector<uint8_t> expo(m.begin() + tb, m.begin() + te);
        out.terms.emplace(std::move(expo), c);
    }
    return out;
}

/// Substitute lambda(h_i) for h_i.
inline FqElem eval_h_poly(const SuperAlgebra& A, const HPolynomial& ph, const Weight& lam) {
    const gf::FieldCtx* F = A.F();
    FqElem acc = F->zero();
    for (const auto& [expo, c] : ph.terms) {
        FqElem t = c;
        for (size_t i = 0; i < expo.size(); ++i)
            if (expo[i] != 0) t *= A.weight_eval(lam, A.toral_begin() + static_cast<int>(i)).pow(expo[i]);
        acc += t;
    }
    return acc;
}

/// Number of canonical monomials: p^{dim even} * 2^{dim odd}.
inline uint64_t monomial_count(const SuperAlgebra& A) {
    uint64_t n = 1;
    for (int i = 0; i < A.dim(); ++i) n *= A.is_even(i) ? A.p() : 2;
    return n;
}

/// Enumerate every canonical monomial (odometer over exponent bounds).
inline void enumerate_monomials(const SuperAlgebra& A, const std::function<void(const Mono&)>& fn) {
    Mono m(static_cast<size_t>(A.dim()), 0);
    std::vector<uint8_t> bound(static_cast<size_t>(A.dim()));
    for (int i = 0; i < A.dim(); ++i)
        bound[static_cast<size_t>(i)] = A.is_even(i) ? static_cast<uint8_t>(A.p()) : 2;
    while (true) {
        fn(m);
        int pos = A.dim() - 1;
        while (pos >= 0) {
            if (++m[static_cast<size_t>(pos)] < bound[static_cast<size_t>(pos)]) break;
            m[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

} // namespace superverma::pbw
