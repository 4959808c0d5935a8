#pragma once

// Finite-dimensional modules over U_chi(g) and U_chi(g_0): baby Verma
// modules, the induction functor psi and the g_1-invariants functor phi,
// duals, socle seeds and spin-up, irreducibility and composition series,
// Hom spaces, H^1(g_1, -), freeness over the odd exterior algebra, and
// formal / graded characters.
//
// Every FDModule is certified at construction: the action matrices must
// satisfy the super-commutator relations of the structure constants, the
// even p-power relations act(x)^p - act(x^[p]) = chi(x)^p id, and the odd
// square relations act(y)^2 = (1/2) act([y,y]).

#include "pbw.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace superverma::modrep {

using gf::FieldCtx;
using gf::FqElem;
using gf::Matrix;
using liesuper::Coords;
using liesuper::Group;
using liesuper::PChar;
using liesuper::SuperAlgebra;
using pbw::Mono;
using pbw::Order;
using pbw::Terms;
using pbw::Word;
using rootdata::Weight;

enum class AlgebraPart { Full, Even };

struct EnumerationCapExceeded : std::runtime_error {
    explicit EnumerationCapExceeded(int dim, int cap)
        : std::runtime_error("seed eigenspace dimension " + std::to_string(dim) +
                             " exceeds the enumeration cap " + std::to_string(cap)) {}
};

class FDModule {
public:
    FDModule(const SuperAlgebra* A, AlgebraPart part, PChar chi, std::vector<Matrix> actions,
             std::optional<std::vector<int>> parity, std::string provenance)
        : A_(A), part_(part), chi_(std::move(chi)), act_(std::move(actions)),
          parity_(std::move(parity)), provenance_(std::move(provenance)) {
        gens_ = part_ == AlgebraPart::Full ? all_indices() : A_->even_indices();
        if (act_.size() != gens_.size())
            throw std::invalid_argument("FDModule: expected " + std::to_string(gens_.size()) + " action matrices");
        dim_ = act_.empty() ? 0 : act_[0].rows();
        for (size_t i = 0; i < gens_.size(); ++i) {
            gen_pos_[gens_[i]] = static_cast<int>(i);
            if (act_[i].rows() != dim_ || act_[i].cols() != dim_)
                throw std::invalid_argument("FDModule: action matrices must be square of equal size");
        }
        if (parity_ && static_cast<int>(parity_->size()) != dim_)
            throw std::invalid_argument("FDModule: parity vector length mismatch");
        certify();
    }

    const SuperAlgebra& algebra() const { return *A_; }
    AlgebraPart part() const { return part_; }
    const PChar& chi() const { return chi_; }
    int dim() const { return dim_; }
    const std::vector<int>& generators() const { return gens_; }
    const std::string& provenance() const { return provenance_; }
    const std::optional<std::vector<int>>& parity() const { return parity_; }
    const FieldCtx* F() const { return A_->F(); }

    const Matrix& act(int basisIdx) const {
        auto it = gen_pos_.find(basisIdx);
        if (it == gen_pos_.end()) throw std::invalid_argument("FDModule: no action for basis index");
        return act_[static_cast<size_t>(it->second)];
    }
    bool has_action(int basisIdx) const { return gen_pos_.count(basisIdx) != 0; }

    /// Positive-root basis indices acting on this module (n^+ for the part).
    std::vector<int> positive_action_indices() const {
        std::vector<int> out;
        if (part_ == AlgebraPart::Full) out = A_->group_indices(Group::PosOdd);
        auto pe = A_->group_indices(Group::PosEven);
        out.insert(out.end(), pe.begin(), pe.end());
        return out;
    }
    std::vector<int> toral_indices() const {
        std::vector<int> out;
        for (int i = A_->toral_begin(); i < A_->toral_end(); ++i) out.push_back(i);
        return out;
    }
    std::vector<int> odd_positive_indices() const { return A_->group_indices(Group::PosOdd); }

private:
    void certify() const {
        const FieldCtx* F = A_->F();
        const FqElem half = F->half();
        Matrix id = Matrix::identity(F, dim_);
        for (size_t a = 0; a < gens_.size(); ++a)
            for (size_t b = a; b < gens_.size(); ++b) {
                int i = gens_[a], j = gens_[b];
                bool both_odd = !A_->is_even(i) && !A_->is_even(j);
                Matrix lhs = act_[a] * act_[b];
                lhs = both_odd ? lhs + act_[b] * act_[a] : lhs - act_[b] * act_[a];
                Matrix rhs(F, dim_, dim_);
                const Coords& br = A_->bracket_basis(i, j);
                for (int t = 0; t < A_->dim(); ++t)
                    if (!br[static_cast<size_t>(t)].is_zero())
                        rhs = rhs + act(t).scaled(br[static_cast<size_t>(t)]);
                if (lhs != rhs)
                    throw std::logic_error("FDModule: bracket relation fails at (" +
                                           A_->basis[static_cast<size_t>(i)].label + ", " +
                                           A_->basis[static_cast<size_t>(j)].label + ") [" + provenance_ + "]");
            }
        for (size_t a = 0; a < gens_.size(); ++a) {
            int i = gens_[a];
            if (A_->is_even(i)) {
                Matrix lhs = act_[a].power(A_->p());
                const Coords& pp = A_->p_power_basis(i);
                Matrix rhs(F, dim_, dim_);
                for (int t = 0; t < A_->dim(); ++t)
                    if (!pp[static_cast<size_t>(t)].is_zero()) rhs = rhs + act(t).scaled(pp[static_cast<size_t>(t)]);
                rhs = rhs + id.scaled(A_->chi_value(chi_, i).pow(A_->p()));
                if (lhs != rhs)
                    throw std::logic_error("FDModule: p-power relation fails at " +
                                           A_->basis[static_cast<size_t>(i)].label + " [" + provenance_ + "]");
            } else {
                Matrix lhs = act_[a] * act_[a];
                const Coords& br = A_->bracket_basis(i, i);
                Matrix rhs(F, dim_, dim_);
                for (int t = 0; t < A_->dim(); ++t)
                    if (!br[static_cast<size_t>(t)].is_zero())
                        rhs = rhs + act(t).scaled(half * br[static_cast<size_t>(t)]);
                if (lhs != rhs)
                    throw std::logic_error("FDModule: odd square relation fails at " +
                                           A_->basis[static_cast<size_t>(i)].label + " [" + provenance_ + "]");
            }
        }
    }

    std::vector<int> all_indices() const {
        std::vector<int> out(static_cast<size_t>(A_->dim()));
        for (int i = 0; i < A_->dim(); ++i) out[static_cast<size_t>(i)] = i;
        return out;
    }

    const SuperAlgebra* A_;
    AlgebraPart part_;
    PChar chi_;
    std::vector<Matrix> act_;
    std::optional<std::vector<int>> parity_;
    std::string provenance_;
    int dim_ = 0;
    std::vector<int> gens_;
    std::map<int, int> gen_pos_;
};

// ---------------------------------------------------------------------------
// Baby Verma modules
// ---------------------------------------------------------------------------

namespace detail {

/// Mixed-radix index over exponent tuples for the given basis indices, last
/// position fastest; index 0 is the zero tuple (the highest weight vector).
struct MonoIndexer {
    std::vector<int> positions;  // basis indices carrying exponents
    std::vector<int> bounds;     // exponent bound per position
    int total = 1;

    MonoIndexer(const SuperAlgebra& A, const std::vector<int>& pos) : positions(pos) {
        for (int i : positions) {
            bounds.push_back(A.is_even(i) ? static_cast<int>(A.p()) : 2);
            total *= bounds.back();
        }
    }
    int index_of(const Mono& m) const {
        int idx = 0;
        for (size_t t = 0; t < positions.size(); ++t)
            idx = idx * bounds[t] + m[static_cast<size_t>(positions[t])];
        return idx;
    }
    std::vector<uint8_t> tuple_of(int idx) const {
        std::vector<uint8_t> e(positions.size(), 0);
        for (size_t t = positions.size(); t-- > 0;) {
            e[t] = static_cast<uint8_t>(idx % bounds[t]);
            idx /= bounds[t];
        }
        return e;
    }
    Word word_of(int idx) const {
        auto e = tuple_of(idx);
        Word w;
        for (size_t t = 0; t < positions.size(); ++t)
            for (int rep = 0; rep < e[t]; ++rep) w.push_back(positions[t]);
        return w;
    }
    int weight_of(int idx) const { // number of letters
        auto e = tuple_of(idx);
        int s = 0;
        for (uint8_t x : e) s += x;
        return s;
    }
};

} // namespace detail

/// Common induced-module builder: basis monomials in the given negative
/// letters applied to a highest weight vector; positive letters kill it,
/// torals act by lambda.
inline FDModule make_highest_weight_module(const SuperAlgebra& A, const PChar& chi, const Weight& lam,
                                           AlgebraPart part, const std::vector<int>& negative_positions,
                                           const std::string& provenance) {
    const FieldCtx* F = A.F();
    // chi must vanish on the even positive radical for K_lambda to exist.
    for (int i : A.group_indices(Group::PosEven))
        if (!A.chi_value(chi, i).is_zero())
            throw std::invalid_argument("baby verma: chi must vanish on the even positive nilradical");
    if (int coord = A.lambda_chi_failing_coordinate(lam, chi); coord != 0)
        throw std::invalid_argument("baby verma: lambda not in Lambda_chi (toral coordinate " +
                                    std::to_string(coord) + " fails)");
    detail::MonoIndexer ix(A, negative_positions);
    int d = ix.total;
    std::vector<int> gens = part == AlgebraPart::Full
                                ? [&] {
                                      std::vector<int> v(static_cast<size_t>(A.dim()));
                                      for (int i = 0; i < A.dim(); ++i) v[static_cast<size_t>(i)] = i;
                                      return v;
                                  }()
                                : A.even_indices();
    std::vector<Matrix> actions(gens.size(), Matrix(F, d, d));
    int tb = A.toral_begin(), te = A.toral_end();
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int g = gens[gi];
        for (int col = 0; col < d; ++col) {
            Word w = ix.word_of(col);
            w.insert(w.begin(), g);
            Terms terms = pbw::straighten_word(A, chi, w, Order::canonical(A));
            for (const auto& [m, c] : terms) {
                // positive letters annihilate the highest weight vector
                bool killed = false;
                for (int i : A.positive_indices())
                    if (m[static_cast<size_t>(i)] != 0) { killed = true; break; }
                if (killed) continue;
                FqElem coeff = c;
                for (int i = tb; i < te; ++i)
                    if (m[static_cast<size_t>(i)] != 0)
                        coeff *= A.weight_eval(lam, i).pow(m[static_cast<size_t>(i)]);
                actions[gi].at(ix.index_of(m), col) += coeff;
            }
        }
    }
    std::vector<int> parity(static_cast<size_t>(d), 0);
    for (int idx = 0; idx < d; ++idx) {
        int odd_letters = 0;
        auto e = ix.tuple_of(idx);
        for (size_t t = 0; t < ix.positions.size(); ++t)
            if (!A.is_even(ix.positions[t])) odd_letters += e[t];
        parity[static_cast<size_t>(idx)] = odd_letters % 2;
    }
    return FDModule(&A, part, chi, std::move(actions), parity, provenance);
}

/// Z^0_chi(lambda): the baby Verma module of U_chi(g_0), dimension
/// p^{|Delta_0^+|}.
inline FDModule baby_verma_even(const SuperAlgebra& A, const PChar& chi, const Weight& lam) {
    return make_highest_weight_module(A, chi, lam, AlgebraPart::Even, A.group_indices(Group::NegEven),
                                      "verma-even");
}

/// Z_chi(lambda): the baby Verma module of U_chi(g), dimension
/// p^{|Delta_0^+|} 2^{|Delta_1^+|}.
inline FDModule baby_verma(const SuperAlgebra& A, const PChar& chi, const Weight& lam) {
    auto negs = A.group_indices(Group::NegEven);
    auto no = A.group_indices(Group::NegOdd);
    negs.insert(negs.end(), no.begin(), no.end());
    return make_highest_weight_module(A, chi, lam, AlgebraPart::Full, negs, "verma");
}

// ---------------------------------------------------------------------------
// The functors psi and phi
// ---------------------------------------------------------------------------

/// psi(M0) = U_chi(g) (x)_{U_chi(g_+)} M0 with g_1 acting trivially on M0.
/// Underlying space Lambda(g_{-1}) (x) M0; the flat index is
/// (odd tuple) * dim M0 + (M0 index).
inline FDModule induce_psi(const SuperAlgebra& A, const FDModule& M0) {
    if (&M0.algebra() != &A || M0.part() != AlgebraPart::Even)
        throw std::invalid_argument("induce_psi: expected a module over the even part of the same algebra");
    const FieldCtx* F = A.F();
    const PChar& chi = M0.chi();
    auto neg_odd = A.group_indices(Group::NegOdd);
    detail::MonoIndexer ix(A, neg_odd);
    int blocks = ix.total, d0 = M0.dim(), d = blocks * d0;
    Order psi_ord = Order::psi_induction(A);

    // Even letters of a psi-ordered monomial, rightmost first (they act on
    // M0 in that order); collected per canonical monomial.
    auto even_letters_desc = [&](const Mono& m) {
        std::vector<std::pair<int, int>> out; // (basis index, exponent), rightmost first
        std::vector<int> evens;
        for (int i : A.group_indices(Group::NegEven)) evens.push_back(i);
        for (int i = A.toral_begin(); i < A.toral_end(); ++i) evens.push_back(i);
        for (int i : A.group_indices(Group::PosEven)) evens.push_back(i);
        for (auto it = evens.rbegin(); it != evens.rend(); ++it)
            if (m[static_cast<size_t>(*it)] != 0) out.emplace_back(*it, m[static_cast<size_t>(*it)]);
        return out;
    };

    std::vector<Matrix> actions(static_cast<size_t>(A.dim()), Matrix(F, d, d));
    for (int g = 0; g < A.dim(); ++g) {
        for (int blk = 0; blk < blocks; ++blk) {
            Word w = ix.word_of(blk);
            w.insert(w.begin(), g);
            Terms terms = pbw::straighten_word(A, chi, w, psi_ord);
            for (const auto& [m, c] : terms) {
                bool killed = false;
                for (int i : A.group_indices(Group::PosOdd))
                    if (m[static_cast<size_t>(i)] != 0) { killed = true; break; }
                if (killed) continue; // g_1 acts trivially on M0
                int target_blk = ix.index_of(m);
                // even section applied column-wise to M0
                Matrix op = Matrix::identity(F, d0);
                bool first = true;
                for (auto [idx, e] : even_letters_desc(m)) {
                    Matrix pw = M0.act(idx).power(static_cast<uint64_t>(e));
                    op = first ? std::move(pw) : pw * op;
                    first = false;
                }
                for (int j = 0; j < d0; ++j)
                    for (int r = 0; r < d0; ++r) {
                        const FqElem& v = op.at(r, j);
                        if (!v.is_zero())
                            actions[static_cast<size_t>(g)].at(target_blk * d0 + r, blk * d0 + j) += c * v;
                    }
            }
        }
    }
    std::optional<std::vector<int>> parity;
    {
        std::vector<int> par(static_cast<size_t>(d), 0);
        for (int blk = 0; blk < blocks; ++blk) {
            int odd = ix.weight_of(blk) % 2;
            for (int j = 0; j < d0; ++j) {
                int pj = M0.parity() ? (*M0.parity())[static_cast<size_t>(j)] : 0;
                par[static_cast<size_t>(blk * d0 + j)] = (odd + pj) % 2;
            }
        }
        parity = std::move(par);
    }
    return FDModule(&A, AlgebraPart::Full, chi, std::move(actions), parity, "induced");
}

/// phi(M) = M^{g_1}: the joint kernel of the positive odd actions with the
/// restricted g_0-action.
inline FDModule invariants_phi(const FDModule& M) {
    const SuperAlgebra& A = M.algebra();
    if (M.part() != AlgebraPart::Full)
        throw std::invalid_argument("invariants_phi: expected a module over the full algebra");
    const FieldCtx* F = M.F();
    auto odd_pos = M.odd_positive_indices();
    Matrix stacked(F, 0, 0);
    bool first = true;
    for (int i : odd_pos) {
        stacked = first ? M.act(i) : Matrix::vstack(stacked, M.act(i));
        first = false;
    }
    Matrix K = odd_pos.empty() ? Matrix::identity(F, M.dim()) : gf::kernel_basis(stacked);
    int e = K.cols();
    std::vector<Matrix> actions;
    for (int g : A.even_indices()) {
        Matrix img = M.act(g) * K;
        auto X = gf::solve(K, img);
        if (!X) throw std::logic_error("invariants_phi: invariants not g_0-stable?");
        actions.push_back(std::move(*X));
    }
    std::optional<std::vector<int>> parity;
    if (M.parity()) {
        // The kernel is graded; recover one parity per column when the
        // column is homogeneous (it is, for graded M, after splitting).
        std::vector<int> par(static_cast<size_t>(e), 0);
        bool ok = true;
        for (int c = 0; c < e && ok; ++c) {
            bool has_even = false, has_odd = false;
            for (int r = 0; r < M.dim(); ++r)
                if (!K.at(r, c).is_zero())
                    ((*M.parity())[static_cast<size_t>(r)] == 0 ? has_even : has_odd) = true;
            if (has_even && has_odd) ok = false;
            par[static_cast<size_t>(c)] = has_odd ? 1 : 0;
        }
        if (ok) parity = std::move(par);
    }
    return FDModule(&A, AlgebraPart::Even, M.chi(), std::move(actions), parity, "invariants");
}

/// Dual module over U_{-chi}: signed transpose on the parity-graded space.
inline FDModule dual_module(const FDModule& M) {
    const SuperAlgebra& A = M.algebra();
    const FieldCtx* F = M.F();
    bool needs_parity = false;
    for (int g : M.generators())
        if (!A.is_even(g)) needs_parity = true;
    if (needs_parity && !M.parity())
        throw std::invalid_argument("dual_module: parity grading required for odd actions");
    PChar neg_chi = M.chi();
    for (auto& v : neg_chi.values) v = -v;
    std::vector<Matrix> actions;
    for (int g : M.generators()) {
        const Matrix& Amat = M.act(g);
        Matrix D(F, M.dim(), M.dim());
        bool g_odd = !A.is_even(g);
        for (int i = 0; i < M.dim(); ++i)
            for (int j = 0; j < M.dim(); ++j) {
                FqElem v = Amat.at(i, j);
                if (v.is_zero()) continue;
                // (y f_i)(m_j) = -(-1)^{|y||m_i|} f_i(y m_j)
                bool flip = g_odd && M.parity() && (*M.parity())[static_cast<size_t>(i)] == 1;
                D.at(j, i) = flip ? v : -v;
            }
        actions.push_back(std::move(D));
    }
    return FDModule(&A, M.part(), neg_chi, std::move(actions), M.parity(), "dual");
}

// ---------------------------------------------------------------------------
// Socle seeds, spin-up, irreducibility
// ---------------------------------------------------------------------------

struct SocleSeed {
    Weight weight;
    Matrix basis; // dim x e, columns span the joint eigenspace inside M^{n^+}
};

namespace detail {

/// Incremental row-echelon basis of a subspace of F^d.
class Echelon {
public:
    explicit Echelon(const FieldCtx* F, int d) : F_(F), d_(d) {}
    int dim() const { return static_cast<int>(rows_.size()); }
    /// Reduce v against the basis; returns the remainder.
    std::vector<FqElem> reduce(std::vector<FqElem> v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const FqElem& lead = v[static_cast<size_t>(pivots_[r])];
            if (lead.is_zero()) continue;
            FqElem f = lead;
            for (int c = 0; c < d_; ++c)
                if (!rows_[r][static_cast<size_t>(c)].is_zero())
                    v[static_cast<size_t>(c)] -= f * rows_[r][static_cast<size_t>(c)];
        }
        return v;
    }
    /// Insert v; returns true if it enlarged the span.
    bool insert(std::vector<FqElem> v) {
        v = reduce(std::move(v));
        int pivot = -1;
        for (int c = 0; c < d_; ++c)
            if (!v[static_cast<size_t>(c)].is_zero()) { pivot = c; break; }
        if (pivot < 0) return false;
        FqElem inv = v[static_cast<size_t>(pivot)].inverse();
        for (int c = 0; c < d_; ++c) v[static_cast<size_t>(c)] = v[static_cast<size_t>(c)] * inv;
        // back-substitute to keep reduced form
        for (size_t r = 0; r < rows_.size(); ++r) {
            FqElem f = rows_[r][static_cast<size_t>(pivot)];
            if (f.is_zero()) continue;
            for (int c = 0; c < d_; ++c) rows_[r][static_cast<size_t>(c)] -= f * v[static_cast<size_t>(c)];
        }
        size_t at = 0;
        while (at < pivots_.size() && pivots_[at] < pivot) ++at;
        rows_.insert(rows_.begin() + static_cast<long>(at), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<long>(at), pivot);
        return true;
    }
    bool contains(const std::vector<FqElem>& v) const {
        auto rem = reduce(v);
        for (const auto& x : rem)
            if (!x.is_zero()) return false;
        return true;
    }
    Matrix basis_matrix() const {
        Matrix m(F_, d_, dim());
        for (int c = 0; c < dim(); ++c)
            for (int r = 0; r < d_; ++r) m.at(r, c) = rows_[static_cast<size_t>(c)][static_cast<size_t>(r)];
        return m;
    }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    const FieldCtx* F_;
    int d_;
    std::vector<std::vector<FqElem>> rows_;
    std::vector<int> pivots_;
};

} // namespace detail

/// Smallest action-stable subspace containing v; returns an echelon basis.
inline detail::Echelon spin_echelon(const FDModule& M, const std::vector<FqElem>& v) {
    detail::Echelon ech(M.F(), M.dim());
    std::vector<std::vector<FqElem>> queue;
    if (ech.insert(v)) queue.push_back(v);
    while (!queue.empty()) {
        auto u = std::move(queue.back());
        queue.pop_back();
        for (int g : M.generators()) {
            auto img = M.act(g).apply(u);
            if (ech.insert(img)) queue.push_back(std::move(img));
        }
    }
    return ech;
}

inline Matrix spin(const FDModule& M, const std::vector<FqElem>& v) {
    return spin_echelon(M, v).basis_matrix();
}

/// M^{n^+} decomposed into joint toral eigenspaces with their weights;
/// requires chi to vanish on the even positive nilradical so that n^+ acts
/// nilpotently and h semisimply.
inline std::vector<SocleSeed> socle_seeds(const FDModule& M) {
    const SuperAlgebra& A = M.algebra();
    const FieldCtx* F = M.F();
    for (int i : A.group_indices(Group::PosEven))
        if (!A.chi_value(M.chi(), i).is_zero())
            throw std::invalid_argument("socle_seeds: chi must vanish on the even positive nilradical");
    auto pos = M.positive_action_indices();
    Matrix K(F, 0, 0);
    if (pos.empty()) {
        K = Matrix::identity(F, M.dim());
    } else {
        Matrix stacked = M.act(pos[0]);
        for (size_t i = 1; i < pos.size(); ++i) stacked = Matrix::vstack(stacked, M.act(pos[i]));
        K = gf::kernel_basis(stacked);
    }
    if (K.cols() == 0) throw std::logic_error("socle_seeds: empty n^+-invariant space");

    struct Piece {
        Matrix basis;                // dim x e
        std::vector<FqElem> eigen;   // toral eigenvalues so far
    };
    std::vector<Piece> pieces{{K, {}}};
    for (int h = A.toral_begin(); h < A.toral_end(); ++h) {
        auto candidates = F->artin_schreier_solve(A.chi_value(M.chi(), h).pow(A.p()));
        std::vector<Piece> next;
        int total = 0;
        for (const auto& piece : pieces) {
            // restriction of act(h) to the piece
            Matrix img = M.act(h) * piece.basis;
            auto R = gf::solve(piece.basis, img);
            if (!R) throw std::logic_error("socle_seeds: invariant space not h-stable?");
            for (const auto& s : candidates) {
                Matrix shifted = *R - Matrix::identity(F, R->rows()).scaled(s);
                Matrix ker = gf::kernel_basis(shifted);
                if (ker.cols() == 0) continue;
                Piece np{piece.basis * ker, piece.eigen};
                np.eigen.push_back(s);
                total += np.basis.cols();
                next.push_back(std::move(np));
            }
        }
        int before = 0;
        for (const auto& piece : pieces) before += piece.basis.cols();
        if (total != before)
            throw std::logic_error("socle_seeds: toral action failed to split over the working field");
        pieces = std::move(next);
    }
    std::vector<SocleSeed> out;
    for (auto& piece : pieces)
        out.push_back(SocleSeed{A.rd.weight_from_toral(piece.eigen, F), std::move(piece.basis)});
    std::sort(out.begin(), out.end(),
              [](const SocleSeed& a, const SocleSeed& b) { return a.weight < b.weight; });
    return out;
}

namespace detail {

/// All projective-line representatives in the column span of basis
/// (first nonzero coordinate normalized to 1): (q^e - 1)/(q - 1) vectors.
inline std::vector<std::vector<FqElem>> projective_lines(const FieldCtx* F, const Matrix& basis) {
    int e = basis.cols();
    std::vector<std::vector<FqElem>> out;
    auto elems = F->all_elements();
    // coefficient tuples: first nonzero entry = 1
    std::vector<int> stack;
    std::vector<FqElem> coef(static_cast<size_t>(e), F->zero());
    std::function<void(int, bool)> rec = [&](int pos, bool seen_unit) {
        if (pos == e) {
            if (!seen_unit) return;
            std::vector<FqElem> v(static_cast<size_t>(basis.rows()), F->zero());
            for (int c = 0; c < e; ++c)
                if (!coef[static_cast<size_t>(c)].is_zero())
                    for (int r = 0; r < basis.rows(); ++r)
                        v[static_cast<size_t>(r)] += basis.at(r, c) * coef[static_cast<size_t>(c)];
            out.push_back(std::move(v));
            return;
        }
        if (!seen_unit) {
            coef[static_cast<size_t>(pos)] = F->zero();
            rec(pos + 1, false);
            coef[static_cast<size_t>(pos)] = F->one();
            rec(pos + 1, true);
            coef[static_cast<size_t>(pos)] = F->zero();
        } else {
            for (const auto& x : elems) {
                coef[static_cast<size_t>(pos)] = x;
                rec(pos + 1, true);
            }
            coef[static_cast<size_t>(pos)] = F->zero();
        }
    };
    rec(0, false);
    return out;
}

} // namespace detail

/// Sound and complete for chi vanishing on the even positive nilradical:
/// every nonzero submodule contains a seed eigenvector, so M is irreducible
/// iff every seed line spins up to all of M.
inline bool is_irreducible(const FDModule& M, int cap = 3) {
    if (M.dim() == 0) return false;
    auto seeds = socle_seeds(M);
    for (const auto& seed : seeds) {
        if (seed.basis.cols() > cap) throw EnumerationCapExceeded(seed.basis.cols(), cap);
        for (const auto& v : detail::projective_lines(M.F(), seed.basis))
            if (spin_echelon(M, v).dim() != M.dim()) return false;
    }
    return true;
}

/// Restrict the module structure to an action-stable subspace (columns of S).
inline FDModule submodule(const FDModule& M, const Matrix& S, const std::string& provenance = "sub") {
    std::vector<Matrix> actions;
    for (int g : M.generators()) {
        Matrix img = M.act(g) * S;
        auto X = gf::solve(S, img);
        if (!X) throw std::invalid_argument("submodule: subspace is not action-stable");
        actions.push_back(std::move(*X));
    }
    std::optional<std::vector<int>> parity;
    if (M.parity()) {
        std::vector<int> par(static_cast<size_t>(S.cols()), 0);
        bool ok = true;
        for (int c = 0; c < S.cols() && ok; ++c) {
            bool has_even = false, has_odd = false;
            for (int r = 0; r < M.dim(); ++r)
                if (!S.at(r, c).is_zero()) ((*M.parity())[static_cast<size_t>(r)] == 0 ? has_even : has_odd) = true;
            if (has_even && has_odd) ok = false;
            par[static_cast<size_t>(c)] = has_odd ? 1 : 0;
        }
        if (ok) parity = std::move(par);
    }
    return FDModule(&M.algebra(), M.part(), M.chi(), std::move(actions), parity, provenance);
}

/// Quotient by the column span of S; the quotient basis consists of the
/// standard coordinates away from the pivot rows of S.
inline FDModule quotient_module(const FDModule& M, const Matrix& S, const std::string& provenance = "quotient") {
    const FieldCtx* F = M.F();
    detail::Echelon ech(F, M.dim());
    for (int c = 0; c < S.cols(); ++c) ech.insert(S.column(c));
    std::vector<bool> is_pivot(static_cast<size_t>(M.dim()), false);
    for (int pcol : ech.pivots()) is_pivot[static_cast<size_t>(pcol)] = true;
    std::vector<int> free_rows;
    for (int r = 0; r < M.dim(); ++r)
        if (!is_pivot[static_cast<size_t>(r)]) free_rows.push_back(r);
    int q = static_cast<int>(free_rows.size());
    auto project = [&](const std::vector<FqElem>& v) {
        auto rem = ech.reduce(v);
        std::vector<FqElem> out(static_cast<size_t>(q), F->zero());
        for (int t = 0; t < q; ++t) out[static_cast<size_t>(t)] = rem[static_cast<size_t>(free_rows[t])];
        return out;
    };
    std::vector<Matrix> actions;
    for (int g : M.generators()) {
        Matrix Q(F, q, q);
        for (int t = 0; t < q; ++t) {
            std::vector<FqElem> e(static_cast<size_t>(M.dim()), F->zero());
            e[static_cast<size_t>(free_rows[t])] = F->one();
            auto img = project(M.act(g).apply(e));
            for (int r = 0; r < q; ++r) Q.at(r, t) = img[static_cast<size_t>(r)];
        }
        actions.push_back(std::move(Q));
    }
    std::optional<std::vector<int>> parity;
    if (M.parity()) {
        // graded quotient only when the submodule echelon is parity-clean
        bool ok = true;
        Matrix eb = ech.basis_matrix();
        for (int c = 0; c < ech.dim() && ok; ++c) {
            bool has_even = false, has_odd = false;
            for (int r = 0; r < M.dim(); ++r)
                if (!eb.at(r, c).is_zero())
                    ((*M.parity())[static_cast<size_t>(r)] == 0 ? has_even : has_odd) = true;
            if (has_even && has_odd) ok = false;
        }
        if (ok) {
            std::vector<int> par(static_cast<size_t>(q), 0);
            for (int t = 0; t < q; ++t) par[static_cast<size_t>(t)] = (*M.parity())[static_cast<size_t>(free_rows[t])];
            parity = std::move(par);
        }
    }
    return FDModule(&M.algebra(), M.part(), M.chi(), std::move(actions), parity, provenance);
}

/// Unique irreducible quotient of a module with chi(n_0^+) = 0 (iterated
/// quotient by sums of proper seed spin-ups).
inline FDModule head(const FDModule& M, int cap = 3) {
    FDModule cur = M;
    while (true) {
        auto seeds = socle_seeds(cur);
        detail::Echelon rad(cur.F(), cur.dim());
        for (const auto& seed : seeds) {
            if (seed.basis.cols() > cap) throw EnumerationCapExceeded(seed.basis.cols(), cap);
            for (const auto& v : detail::projective_lines(cur.F(), seed.basis)) {
                auto sp = spin_echelon(cur, v);
                if (sp.dim() == cur.dim()) continue;
                Matrix b = sp.basis_matrix();
                for (int c = 0; c < b.cols(); ++c) rad.insert(b.column(c));
            }
        }
        if (rad.dim() == 0) return cur;
        cur = quotient_module(cur, rad.basis_matrix(), "head");
    }
}

/// Canonical label of a simple module: (dim, sorted seed weights).
struct SimpleLabel {
    int dim;
    std::vector<Weight> seed_weights;

    bool operator<(const SimpleLabel& o) const {
        if (dim != o.dim) return dim < o.dim;
        return seed_weights < o.seed_weights;
    }
    bool operator==(const SimpleLabel& o) const { return dim == o.dim && seed_weights == o.seed_weights; }
};

inline SimpleLabel simple_label(const FDModule& M) {
    SimpleLabel l;
    l.dim = M.dim();
    for (const auto& s : socle_seeds(M))
        for (int c = 0; c < s.basis.cols(); ++c) l.seed_weights.push_back(s.weight);
    std::sort(l.seed_weights.begin(), l.seed_weights.end());
    return l;
}

/// Jordan-Hoelder factors with multiplicity, canonicalized by simple_label.
inline void composition_factors_into(const FDModule& M, std::vector<FDModule>& out, int cap) {
    if (M.dim() == 0) return;
    auto seeds = socle_seeds(M);
    for (const auto& seed : seeds) {
        if (seed.basis.cols() > cap) throw EnumerationCapExceeded(seed.basis.cols(), cap);
        for (const auto& v : detail::projective_lines(M.F(), seed.basis)) {
            auto sp = spin_echelon(M, v);
            if (sp.dim() == M.dim()) continue;
            Matrix b = sp.basis_matrix();
            composition_factors_into(submodule(M, b, "jh-sub"), out, cap);
            composition_factors_into(quotient_module(M, b, "jh-quot"), out, cap);
            return;
        }
    }
    out.push_back(M); // irreducible
}

inline std::vector<FDModule> composition_factors(const FDModule& M, int cap = 3) {
    std::vector<FDModule> out;
    composition_factors_into(M, out, cap);
    return out;
}

inline std::vector<SimpleLabel> factor_labels(const std::vector<FDModule>& factors) {
    std::vector<SimpleLabel> labels;
    for (const auto& f : factors) labels.push_back(simple_label(f));
    std::sort(labels.begin(), labels.end());
    return labels;
}

// ---------------------------------------------------------------------------
// Hom spaces and isomorphism testing
// ---------------------------------------------------------------------------

/// Basis of {T : T act_M(b) = act_N(b) T for all basis elements b}.
inline std::vector<Matrix> hom_space(const FDModule& M, const FDModule& N) {
    if (&M.algebra() != &N.algebra() || M.part() != N.part())
        throw std::invalid_argument("hom_space: modules over different algebras or parts");
    if (M.chi() != N.chi()) throw std::invalid_argument("hom_space: p-characters differ");
    const FieldCtx* F = M.F();
    int dm = M.dim(), dn = N.dim();
    int unknowns = dm * dn; // T is dn x dm, unknown (r, c) at index r*dm + c
    Matrix sys(F, static_cast<int>(M.generators().size()) * unknowns, unknowns);
    int row = 0;
    for (int g : M.generators()) {
        const Matrix& Am = M.act(g);
        const Matrix& An = N.act(g);
        for (int r = 0; r < dn; ++r)
            for (int c = 0; c < dm; ++c) {
                // (T Am - An T)(r, c) = sum_k T(r,k) Am(k,c) - An(r,k) T(k,c)
                for (int k = 0; k < dm; ++k)
                    if (!Am.at(k, c).is_zero()) sys.at(row, r * dm + k) += Am.at(k, c);
                for (int k = 0; k < dn; ++k)
                    if (!An.at(r, k).is_zero()) sys.at(row, k * dm + c) -= An.at(r, k);
                ++row;
            }
    }
    Matrix ker = gf::kernel_basis(std::move(sys));
    std::vector<Matrix> out;
    for (int c = 0; c < ker.cols(); ++c) {
        Matrix T(F, dn, dm);
        for (int r = 0; r < dn; ++r)
            for (int k = 0; k < dm; ++k) T.at(r, k) = ker.at(r * dm + k, c);
        out.push_back(std::move(T));
    }
    return out;
}

/// An invertible intertwiner, if one exists. Searches the hom space by basis
/// elements, then exhaustively over projective lines when feasible, then by
/// seeded random combinations (each candidate verified exactly).
inline std::optional<Matrix> find_isomorphism(const FDModule& M, const FDModule& N) {
    if (M.dim() != N.dim()) return std::nullopt;
    auto homs = hom_space(M, N);
    if (homs.empty()) return std::nullopt;
    for (const auto& T : homs)
        if (gf::is_invertible(T)) return T;
    const FieldCtx* F = M.F();
    int h = static_cast<int>(homs.size());
    double lines = (std::pow(static_cast<double>(F->q()), h) - 1) / (static_cast<double>(F->q()) - 1);
    if (lines <= 20000.0) {
        Matrix coefspace(F, h, h); // identity columns as a basis placeholder
        for (int i = 0; i < h; ++i) coefspace.at(i, i) = F->one();
        for (const auto& coef : detail::projective_lines(F, coefspace)) {
            Matrix T(F, N.dim(), M.dim());
            for (int i = 0; i < h; ++i)
                if (!coef[static_cast<size_t>(i)].is_zero()) T = T + homs[static_cast<size_t>(i)].scaled(coef[static_cast<size_t>(i)]);
            if (gf::is_invertible(T)) return T;
        }
        return std::nullopt;
    }
    std::mt19937_64 rng(0x5172e57ull);
    auto elems = F->all_elements();
    for (int iter = 0; iter < 128; ++iter) {
        Matrix T(F, N.dim(), M.dim());
        for (int i = 0; i < h; ++i) T = T + homs[static_cast<size_t>(i)].scaled(elems[rng() % elems.size()]);
        if (gf::is_invertible(T)) return T;
    }
    return std::nullopt;
}

inline bool is_isomorphic(const FDModule& M, const FDModule& N) {
    return find_isomorphism(M, N).has_value();
}

inline FDModule direct_sum(const FDModule& M, const FDModule& N) {
    if (&M.algebra() != &N.algebra() || M.part() != N.part() || M.chi() != N.chi())
        throw std::invalid_argument("direct_sum: incompatible modules");
    const FieldCtx* F = M.F();
    int d = M.dim() + N.dim();
    std::vector<Matrix> actions;
    for (int g : M.generators()) {
        Matrix B(F, d, d);
        for (int r = 0; r < M.dim(); ++r)
            for (int c = 0; c < M.dim(); ++c) B.at(r, c) = M.act(g).at(r, c);
        for (int r = 0; r < N.dim(); ++r)
            for (int c = 0; c < N.dim(); ++c) B.at(M.dim() + r, M.dim() + c) = N.act(g).at(r, c);
        actions.push_back(std::move(B));
    }
    std::optional<std::vector<int>> parity;
    if (M.parity() && N.parity()) {
        std::vector<int> par = *M.parity();
        par.insert(par.end(), N.parity()->begin(), N.parity()->end());
        parity = std::move(par);
    }
    return FDModule(&M.algebra(), M.part(), M.chi(), std::move(actions), parity, "sum");
}

// ---------------------------------------------------------------------------
// H^1(g_1, -) and freeness over the odd exterior algebra
// ---------------------------------------------------------------------------

/// dim Z^1 - dim B^1 for the abelian odd algebra spanned by the given
/// actions: Z^1 = {f | y_i f(y_j) + y_j f(y_i) = 0}, B^1 = {y -> y m}.
inline int h1_from_actions(const FieldCtx* F, const std::vector<Matrix>& odd_actions) {
    if (odd_actions.empty()) return 0;
    int s = static_cast<int>(odd_actions.size());
    int d = odd_actions[0].rows();
    Matrix sys(F, (s * (s + 1) / 2) * d, s * d);
    int row = 0;
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            for (int r = 0; r < d; ++r) {
                for (int c = 0; c < d; ++c) {
                    const FqElem& a = odd_actions[static_cast<size_t>(i)].at(r, c);
                    if (!a.is_zero()) sys.at(row, j * d + c) += a;
                    const FqElem& b = odd_actions[static_cast<size_t>(j)].at(r, c);
                    if (!b.is_zero()) sys.at(row, i * d + c) += b;
                }
                ++row;
            }
        }
    int z1 = s * d - gf::rank(std::move(sys));
    Matrix stacked = odd_actions[0];
    for (int i = 1; i < s; ++i) stacked = Matrix::vstack(stacked, odd_actions[static_cast<size_t>(i)]);
    int b1 = gf::rank(std::move(stacked));
    return z1 - b1;
}

inline int h1_g1(const FDModule& M) {
    std::vector<Matrix> odd;
    for (int i : M.odd_positive_indices()) odd.push_back(M.act(i));
    return h1_from_actions(M.F(), odd);
}

/// Nakayama count over the local ring Lambda(g_1): free iff
/// dim M = 2^{dim g_1} * dim(M / g_1 M).
inline bool is_free_over_g1(const FDModule& M) {
    auto odd = M.odd_positive_indices();
    if (odd.empty()) return true;
    Matrix stacked = M.act(odd[0]);
    for (size_t i = 1; i < odd.size(); ++i) stacked = Matrix::hstack(stacked, M.act(odd[i]));
    int top = M.dim() - gf::rank(std::move(stacked));
    uint64_t expect = static_cast<uint64_t>(top) << odd.size();
    return static_cast<uint64_t>(M.dim()) == expect;
}

/// The exterior algebra on the positive odd root vectors as a module over
/// them (left multiplication); used for the H^1 vanishing instance.
inline std::vector<Matrix> exterior_algebra_actions(const SuperAlgebra& A) {
    const FieldCtx* F = A.F();
    int s = static_cast<int>(A.group_indices(Group::PosOdd).size());
    int d = 1 << s;
    std::vector<Matrix> out;
    for (int i = 0; i < s; ++i) {
        Matrix m(F, d, d);
        for (int subset = 0; subset < d; ++subset) {
            if (subset & (1 << i)) continue;
            int below = 0;
            for (int j = 0; j < i; ++j)
                if (subset & (1 << j)) ++below;
            m.at(subset | (1 << i), subset) = (below % 2 == 0) ? F->one() : -F->one();
        }
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// Joint toral eigenvalue multiplicities (the formal character at the level
/// of h-eigenvalues).
inline std::map<Weight, int> formal_character(const FDModule& M) {
    const SuperAlgebra& A = M.algebra();
    const FieldCtx* F = M.F();
    struct Piece {
        Matrix basis;
        std::vector<FqElem> eigen;
    };
    std::vector<Piece> pieces{{Matrix::identity(F, M.dim()), {}}};
    for (int h = A.toral_begin(); h < A.toral_end(); ++h) {
        auto candidates = F->artin_schreier_solve(A.chi_value(M.chi(), h).pow(A.p()));
        std::vector<Piece> next;
        int total = 0;
        for (const auto& piece : pieces) {
            Matrix img = M.act(h) * piece.basis;
            auto R = gf::solve(piece.basis, img);
            if (!R) throw std::logic_error("formal_character: basis not h-stable");
            for (const auto& s : candidates) {
                Matrix ker = gf::kernel_basis(*R - Matrix::identity(F, R->rows()).scaled(s));
                if (ker.cols() == 0) continue;
                Piece np{piece.basis * ker, piece.eigen};
                np.eigen.push_back(s);
                total += np.basis.cols();
                next.push_back(std::move(np));
            }
        }
        if (total != M.dim())
            throw std::logic_error("formal_character: toral action failed to split over the working field");
        pieces = std::move(next);
    }
    std::map<Weight, int> out;
    for (const auto& piece : pieces) out[A.rd.weight_from_toral(piece.eigen, F)] += piece.basis.cols();
    return out;
}

/// Symbolic X-graded character on the integral weight lattice.
struct GradedCharacter {
    std::map<std::vector<int>, long long> mult;

    long long mass() const {
        long long s = 0;
        for (const auto& [w, m] : mult) s += m;
        return s;
    }
    GradedCharacter convolve(const GradedCharacter& o) const {
        GradedCharacter out;
        for (const auto& [w1, m1] : mult)
            for (const auto& [w2, m2] : o.mult) {
                std::vector<int> w = w1;
                for (size_t i = 0; i < w.size(); ++i) w[i] += w2[static_cast<size_t>(i)];
                out.mult[w] += m1 * m2;
            }
        return out;
    }
    bool operator==(const GradedCharacter& o) const { return mult == o.mult; }
};

/// ch Z-hat(lambda) = e^lambda * prod_{even alpha} (1 + e^{-alpha} + ... +
/// e^{-(p-1)alpha}) * prod_{odd beta} (1 + e^{-beta}); with shifted = true
/// the highest weight is lambda - 2(p-1) rho_0. even_only drops the odd
/// factor (the even graded Verma).
inline GradedCharacter graded_verma_character(const rootdata::RootData& rd, uint32_t p,
                                              std::vector<int> lambda, bool shifted,
                                              bool even_only = false) {
    if (static_cast<int>(lambda.size()) != rd.slots)
        throw std::invalid_argument("graded_verma_character: integral weight with " +
                                    std::to_string(rd.slots) + " coordinates expected");
    if (shifted)
        for (int i = 0; i < rd.slots; ++i)
            lambda[static_cast<size_t>(i)] -= static_cast<int>(p - 1) * rd.rho0_2[static_cast<size_t>(i)];
    GradedCharacter out;
    out.mult[lambda] = 1;
    for (const auto& a : rd.pos_even) {
        GradedCharacter factor;
        for (uint32_t e = 0; e < p; ++e) {
            std::vector<int> w(static_cast<size_t>(rd.slots), 0);
            for (int i = 0; i < rd.slots; ++i) w[static_cast<size_t>(i)] = -static_cast<int>(e) * a[static_cast<size_t>(i)];
            factor.mult[w] += 1;
        }
        out = out.convolve(factor);
    }
    if (!even_only)
        for (const auto& b : rd.pos_odd) {
            GradedCharacter factor;
            std::vector<int> zero(static_cast<size_t>(rd.slots), 0), w(static_cast<size_t>(rd.slots), 0);
            for (int i = 0; i < rd.slots; ++i) w[static_cast<size_t>(i)] = -b[static_cast<size_t>(i)];
            factor.mult[zero] += 1;
            factor.mult[w] += 1;
            out = out.convolve(factor);
        }
    return out;
}

/// Left regular representation of U_chi(g) on its canonical monomial basis
/// (desk scale only).
inline FDModule regular_module(const SuperAlgebra& A, const PChar& chi, int max_dim = 512) {
    uint64_t d64 = pbw::monomial_count(A);
    if (d64 > static_cast<uint64_t>(max_dim))
        throw std::invalid_argument("regular_module: dimension " + std::to_string(d64) + " over the cap");
    int d = static_cast<int>(d64);
    std::vector<Mono> monos;
    monos.reserve(static_cast<size_t>(d));
    pbw::enumerate_monomials(A, [&](const Mono& m) { monos.push_back(m); });
    std::map<Mono, int> index;
    for (int i = 0; i < d; ++i) index[monos[static_cast<size_t>(i)]] = i;
    const FieldCtx* F = A.F();
    std::vector<Matrix> actions;
    for (int g = 0; g < A.dim(); ++g) {
        Matrix act(F, d, d);
        for (int col = 0; col < d; ++col) {
            Word w = pbw::AlgebraElem::word_of_mono(monos[static_cast<size_t>(col)]);
            w.insert(w.begin(), g);
            Terms terms = pbw::straighten_word(A, chi, w, Order::canonical(A));
            for (const auto& [m, c] : terms) act.at(index.at(m), col) += c;
        }
        actions.push_back(std::move(act));
    }
    std::vector<int> parity(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
        int odd = 0;
        for (int t = 0; t < A.dim(); ++t)
            if (!A.is_even(t)) odd += monos[static_cast<size_t>(i)][static_cast<size_t>(t)];
        parity[static_cast<size_t>(i)] = odd % 2;
    }
    return FDModule(&A, AlgebraPart::Full, chi, std::move(actions), parity, "regular");
}

} // namespace superverma::modrep
