#pragma once

// Matrix realizations of gl(m|n), sl(m|n) and osp(2|2n) over F_{p^k}:
// a Chevalley-style basis labelled by roots and toral elements, structure
// constants taken from super-commutators in the defining representation,
// the p-power map, the Z-grading g_{-1} + g_0 + g_1, p-character normal
// forms, and the centralizer g_chi.
//
// The basis is stored in the canonical PBW order: negative even root
// vectors, negative odd, torals, positive odd, positive even, sorted
// lexicographically by root inside each group.

#include "gf.hpp"
#include "rootdata.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superverma::liesuper {

using gf::FieldCtx;
using gf::FqElem;
using gf::Matrix;
using rootdata::Family;
using rootdata::Root;
using rootdata::RootData;
using rootdata::Weight;

enum class Parity { Even, Odd };

/// Position of a basis element in the canonical PBW order.
enum class Group { NegEven = 0, NegOdd = 1, Toral = 2, PosOdd = 3, PosEven = 4 };

struct BasisElem {
    std::string label;
    Parity parity;
    int zdeg; // -1 / 0 / +1
    Group group;
    std::optional<Root> root; // nullopt for torals
    Matrix mat;               // defining representation
};

using Coords = std::vector<FqElem>; // coordinates in the algebra basis

class SuperAlgebra;

/// p-character: a linear functional on the even part, stored as one value
/// per even basis element (odd elements carry no value).
struct PChar {
    std::vector<FqElem> values; // indexed like the algebra basis; zero at odd slots

    bool operator==(const PChar& o) const { return values == o.values; }
    bool operator!=(const PChar& o) const { return !(*this == o); }
};

struct ChiClass {
    bool nilpotent_normal_form = false;
    bool semisimple_normal_form = false;
    bool regular_semisimple = false;
    bool regular_nilpotent = false;
};

class SuperAlgebra {
public:
    RootData rd;
    std::shared_ptr<const FieldCtx> ctx;
    std::vector<BasisElem> basis;

    SuperAlgebra(Family family, int m, int n, uint32_t p, int k)
        : rd(rootdata::root_data(family, m, n)), ctx(gf::field_make(p, k)) {
        build_basis();
        build_expander();
        build_structure_constants();
        build_p_power_table();
        verify_construction();
    }

    int dim() const { return static_cast<int>(basis.size()); }
    uint32_t p() const { return ctx->p(); }
    const FieldCtx* F() const { return ctx.get(); }
    int matrix_size() const { return basis[0].mat.rows(); }

    /// sl(m|n) with p | (m-n): the induced form on the traceless Cartan is
    /// degenerate. Bracket-level use stays valid; form-dependent operations
    /// should consult this flag.
    bool form_degenerate() const {
        return rd.family == Family::sl && ((rd.m - rd.n) % static_cast<int>(p()) + static_cast<int>(p())) % static_cast<int>(p()) == 0;
    }

    bool is_even(int i) const { return basis[static_cast<size_t>(i)].parity == Parity::Even; }
    bool is_toral(int i) const { return basis[static_cast<size_t>(i)].group == Group::Toral; }

    int toral_begin() const { return group_begin_[2]; }
    int toral_end() const { return group_begin_[3]; }
    int rank() const { return toral_end() - toral_begin(); }

    std::vector<int> group_indices(Group g) const {
        std::vector<int> out;
        for (int i = group_begin_[static_cast<int>(g)]; i < group_begin_[static_cast<int>(g) + 1]; ++i)
            out.push_back(i);
        return out;
    }
    std::vector<int> even_indices() const {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (is_even(i)) out.push_back(i);
        return out;
    }
    /// Indices of n^+ = positive root vectors of both parities.
    std::vector<int> positive_indices() const {
        auto out = group_indices(Group::PosOdd);
        auto pe = group_indices(Group::PosEven);
        out.insert(out.end(), pe.begin(), pe.end());
        return out;
    }

    int index_of_root(const Root& r) const {
        auto it = root_index_.find(r);
        if (it == root_index_.end()) throw std::invalid_argument("no basis vector with root " + rd.root_str(r));
        return it->second;
    }

    /// Structure constants: coordinates of [b_i, b_j].
    const Coords& bracket_basis(int i, int j) const {
        return sc_[static_cast<size_t>(i) * basis.size() + static_cast<size_t>(j)];
    }

    /// Bilinear extension of the bracket table to coordinate vectors.
    Coords bracket(const Coords& x, const Coords& y) const {
        require_dim(x); require_dim(y);
        Coords out(basis.size(), F()->zero());
        for (size_t i = 0; i < basis.size(); ++i) {
            if (x[i].is_zero()) continue;
            for (size_t j = 0; j < basis.size(); ++j) {
                if (y[j].is_zero()) continue;
                const Coords& c = bracket_basis(static_cast<int>(i), static_cast<int>(j));
                FqElem s = x[i] * y[j];
                for (size_t t = 0; t < basis.size(); ++t)
                    if (!c[t].is_zero()) out[t] += s * c[t];
            }
        }
        return out;
    }

    /// p-power map on a purely even coordinate vector (p-th matrix power in
    /// the defining realization).
    Coords p_power(const Coords& x) const {
        require_dim(x);
        for (size_t i = 0; i < basis.size(); ++i)
            if (!x[i].is_zero() && !is_even(static_cast<int>(i)))
                throw std::invalid_argument("p_power: input must be purely even");
        Matrix mx(F(), matrix_size(), matrix_size());
        for (size_t i = 0; i < basis.size(); ++i)
            if (!x[i].is_zero()) mx = mx + basis[i].mat.scaled(x[i]);
        return expand(mx.power(p()));
    }

    const Coords& p_power_basis(int i) const {
        if (!is_even(i)) throw std::invalid_argument("p_power: basis element is odd");
        return p_power_table_.at(i);
    }

    Coords unit_coords(int i) const {
        Coords c(basis.size(), F()->zero());
        c[static_cast<size_t>(i)] = F()->one();
        return c;
    }

    /// lambda(h) for a toral (diagonal) element given by basis index.
    FqElem weight_eval(const Weight& lam, int toralIdx) const {
        return weight_eval_mat(lam, basis[static_cast<size_t>(toralIdx)].mat);
    }
    /// lambda(h) for any diagonal Cartan element.
    FqElem weight_eval_mat(const Weight& lam, const Matrix& h) const {
        FqElem s = F()->zero();
        for (int sidx = 0; sidx < rd.slots; ++sidx) {
            int q = slot_pos_[static_cast<size_t>(sidx)];
            if (!h.at(q, q).is_zero()) s += h.at(q, q) * lam.coords[static_cast<size_t>(sidx)];
        }
        return s;
    }
    FqElem weight_eval_coords(const Weight& lam, const Coords& x) const {
        FqElem s = F()->zero();
        for (size_t i = 0; i < basis.size(); ++i) {
            if (x[i].is_zero()) continue;
            if (!is_toral(static_cast<int>(i)))
                throw std::invalid_argument("weight_eval: element not toral");
            s += x[i] * weight_eval(lam, static_cast<int>(i));
        }
        return s;
    }

    /// Coroot H_alpha = [X_alpha, X_{-alpha}] as a coordinate vector.
    Coords coroot(const Root& alpha) const {
        Root neg = alpha;
        for (auto& v : neg) v = -v;
        return bracket_basis(index_of_root(alpha), index_of_root(neg));
    }

    FqElem root_eval(const Root& alpha, int toralIdx) const {
        // alpha(h) via the diagonal of h in the defining representation.
        const Matrix& h = basis[static_cast<size_t>(toralIdx)].mat;
        FqElem s = F()->zero();
        for (int sidx = 0; sidx < rd.slots; ++sidx) {
            int q = slot_pos_[static_cast<size_t>(sidx)];
            int c = alpha[static_cast<size_t>(sidx)];
            if (c != 0 && !h.at(q, q).is_zero()) s += h.at(q, q) * F()->from_int(c);
        }
        return s;
    }

    // -- p-characters ----------------------------------------------------

    PChar chi_zero() const { return PChar{Coords(basis.size(), F()->zero())}; }

    /// Semisimple normal form: zero on every root vector, given values on
    /// the toral basis.
    PChar chi_semisimple(const std::vector<FqElem>& toral_values) const {
        if (static_cast<int>(toral_values.size()) != rank())
            throw std::invalid_argument("chi_semisimple: expected " + std::to_string(rank()) + " values");
        PChar chi = chi_zero();
        for (int i = 0; i < rank(); ++i)
            chi.values[static_cast<size_t>(toral_begin() + i)] = toral_values[static_cast<size_t>(i)];
        return chi;
    }

    /// Nilpotent normal form: zero on the torals and on n^+, given values on
    /// X_{-alpha} for the simple even roots alpha (in rd.simple_even order).
    PChar chi_nilpotent(const std::vector<FqElem>& values) const {
        auto se = rd.simple_even();
        if (values.size() != se.size())
            throw std::invalid_argument("chi_nilpotent: expected " + std::to_string(se.size()) + " values");
        PChar chi = chi_zero();
        for (size_t i = 0; i < se.size(); ++i) {
            Root neg = se[i];
            for (auto& v : neg) v = -v;
            chi.values[static_cast<size_t>(index_of_root(neg))] = values[i];
        }
        return chi;
    }

    PChar chi_explicit(const std::vector<FqElem>& even_values) const {
        auto ev = even_indices();
        if (even_values.size() != ev.size())
            throw std::invalid_argument("chi_explicit: expected " + std::to_string(ev.size()) + " values");
        PChar chi = chi_zero();
        for (size_t i = 0; i < ev.size(); ++i) chi.values[static_cast<size_t>(ev[i])] = even_values[i];
        return chi;
    }

    FqElem chi_value(const PChar& chi, int basisIdx) const {
        return is_even(basisIdx) ? chi.values[static_cast<size_t>(basisIdx)] : F()->zero();
    }
    FqElem chi_eval(const PChar& chi, const Coords& x) const {
        FqElem s = F()->zero();
        for (size_t i = 0; i < basis.size(); ++i)
            if (!x[i].is_zero() && is_even(static_cast<int>(i))) s += x[i] * chi.values[i];
        return s;
    }

    /// Vanishing-pattern classification; normal forms are tested literally,
    /// without any conjugation search.
    ChiClass chi_classify(const PChar& chi) const {
        ChiClass out;
        bool zero_pos_even = true, zero_neg_even = true, zero_toral = true;
        for (int i : group_indices(Group::PosEven)) zero_pos_even &= chi.values[static_cast<size_t>(i)].is_zero();
        for (int i : group_indices(Group::NegEven)) zero_neg_even &= chi.values[static_cast<size_t>(i)].is_zero();
        for (int i = toral_begin(); i < toral_end(); ++i) zero_toral &= chi.values[static_cast<size_t>(i)].is_zero();
        out.nilpotent_normal_form = zero_pos_even && zero_toral;
        out.semisimple_normal_form = zero_pos_even && zero_neg_even;
        if (out.semisimple_normal_form) {
            bool reg = true;
            for (const auto& a : rd.pos_even) reg &= !chi_eval(chi, coroot(a)).is_zero();
            for (const auto& b : rd.pos_odd) reg &= !chi_eval(chi, coroot(b)).is_zero();
            out.regular_semisimple = reg;
        }
        if (out.nilpotent_normal_form) {
            bool reg = true;
            for (const auto& a : rd.simple_even()) {
                Root neg = a;
                for (auto& v : neg) v = -v;
                reg &= !chi.values[static_cast<size_t>(index_of_root(neg))].is_zero();
            }
            out.regular_nilpotent = reg && !rd.simple_even().empty();
        }
        return out;
    }

    /// Basis of g_chi = {y : chi([y, g]) = 0}.
    Matrix centralizer_gchi(const PChar& chi) const {
        Matrix m(F(), dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < dim(); ++i) m.at(j, i) = chi_eval(chi, bracket_basis(i, j));
        return gf::kernel_basis(std::move(m));
    }

    /// Does lambda satisfy the Lambda_chi conditions on the toral basis?
    bool weight_in_lambda_chi(const Weight& lam, const PChar& chi) const {
        for (int i = toral_begin(); i < toral_end(); ++i) {
            FqElem lv = weight_eval(lam, i);
            FqElem cv = chi.values[static_cast<size_t>(i)];
            if (lv.pow(p()) - lv != cv.pow(p())) return false;
        }
        return true;
    }
    /// First failing toral coordinate (1-based), or 0 if lambda is valid.
    int lambda_chi_failing_coordinate(const Weight& lam, const PChar& chi) const {
        for (int i = toral_begin(); i < toral_end(); ++i) {
            FqElem lv = weight_eval(lam, i);
            FqElem cv = chi.values[static_cast<size_t>(i)];
            if (lv.pow(p()) - lv != cv.pow(p())) return i - toral_begin() + 1;
        }
        return 0;
    }

    std::vector<FqElem> chi_toral_values(const PChar& chi) const {
        std::vector<FqElem> v;
        for (int i = toral_begin(); i < toral_end(); ++i) v.push_back(chi.values[static_cast<size_t>(i)]);
        return v;
    }

private:
    std::array<int, 6> group_begin_{};
    std::map<Root, int> root_index_;
    std::vector<Coords> sc_;
    std::map<int, Coords> p_power_table_;
    std::vector<int> slot_pos_; // matrix diagonal position of each weight slot
    // Row-reduced [B | I] for expanding matrices in the basis.
    Matrix expander_;
    std::vector<int> expander_pivots_;

    void require_dim(const Coords& x) const {
        if (x.size() != basis.size()) throw std::invalid_argument("coordinate vector has wrong length");
    }

    Matrix unit_matrix(int N, int r, int c, int sign) const {
        Matrix m(F(), N, N);
        m.at(r, c) = F()->from_int(sign);
        return m;
    }

    void build_basis() {
        std::vector<BasisElem> raw;
        if (rd.family == Family::gl || rd.family == Family::sl) {
            int m = rd.m, n = rd.n, N = m + n;
            slot_pos_.resize(static_cast<size_t>(rd.slots));
            for (int s = 0; s < rd.slots; ++s) slot_pos_[static_cast<size_t>(s)] = s;
            // torals
            if (rd.family == Family::gl) {
                for (int i = 0; i < N; ++i)
                    raw.push_back(BasisElem{"h" + std::to_string(i + 1), Parity::Even, 0, Group::Toral,
                                            std::nullopt, unit_matrix(N, i, i, 1)});
            } else {
                // simple coroots of sl(m|n)
                int h = 0;
                auto add_toral = [&](Matrix mt) {
                    raw.push_back(BasisElem{"h" + std::to_string(++h), Parity::Even, 0, Group::Toral,
                                            std::nullopt, std::move(mt)});
                };
                for (int i = 0; i + 1 < m; ++i)
                    add_toral(unit_matrix(N, i, i, 1) - unit_matrix(N, i + 1, i + 1, 1));
                add_toral(unit_matrix(N, m - 1, m - 1, 1) + unit_matrix(N, m, m, 1));
                for (int j = 0; j + 1 < n; ++j)
                    add_toral(unit_matrix(N, m + j, m + j, 1) - unit_matrix(N, m + j + 1, m + j + 1, 1));
            }
            // root vectors: E_ab, a != b
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    if (a == b) continue;
                    Root r(static_cast<size_t>(rd.slots), 0);
                    r[static_cast<size_t>(a)] += 1;
                    r[static_cast<size_t>(b)] -= 1;
                    bool odd = (a < m) != (b < m);
                    int z = !odd ? 0 : (a < m ? 1 : -1);
                    raw.push_back(BasisElem{"X[" + rd.root_str(r) + "]", odd ? Parity::Odd : Parity::Even,
                                            z, Group::Toral /*set later*/, r, unit_matrix(N, a, b, 1)});
                }
        } else {
            // osp(2|2n), matrix size 2 + 2n. Even block: so(2) for the
            // symmetric swap form + sp(2n) for the standard symplectic form;
            // odd block parametrized by its upper-right 2 x 2n corner.
            int n = rd.n, N = 2 + 2 * n;
            slot_pos_.resize(static_cast<size_t>(rd.slots));
            slot_pos_[0] = 0;
            for (int j = 1; j <= n; ++j) slot_pos_[static_cast<size_t>(j)] = 1 + j;
            auto sp = [&](int i) { return 2 + i; }; // sp block offset, i in [0, 2n)
            // torals: z = diag(1,-1 | 0), d_j = E_jj - E_{n+j,n+j} in the sp block
            raw.push_back(BasisElem{"h1", Parity::Even, 0, Group::Toral, std::nullopt,
                                    unit_matrix(N, 0, 0, 1) - unit_matrix(N, 1, 1, 1)});
            for (int j = 0; j < n; ++j)
                raw.push_back(BasisElem{"h" + std::to_string(j + 2), Parity::Even, 0, Group::Toral, std::nullopt,
                                        unit_matrix(N, sp(j), sp(j), 1) - unit_matrix(N, sp(n + j), sp(n + j), 1)});
            auto root_vec = [&](std::initializer_list<std::pair<int, int>> slots_coeffs) {
                Root r(static_cast<size_t>(rd.slots), 0);
                for (auto [s, c] : slots_coeffs) r[static_cast<size_t>(s)] += c;
                return r;
            };
            auto add_root = [&](const Root& r, Parity par, int z, Matrix mt) {
                raw.push_back(BasisElem{"X[" + rd.root_str(r) + "]", par, z, Group::Toral, r, std::move(mt)});
            };
            // even roots (sp(2n))
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    add_root(root_vec({{1 + i, 1}, {1 + j, -1}}), Parity::Even, 0,
                             unit_matrix(N, sp(i), sp(j), 1) - unit_matrix(N, sp(n + j), sp(n + i), 1));
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    add_root(root_vec({{1 + i, 1}, {1 + j, 1}}), Parity::Even, 0,
                             unit_matrix(N, sp(i), sp(n + j), 1) + unit_matrix(N, sp(j), sp(n + i), 1));
                    add_root(root_vec({{1 + i, -1}, {1 + j, -1}}), Parity::Even, 0,
                             unit_matrix(N, sp(n + i), sp(j), 1) + unit_matrix(N, sp(n + j), sp(i), 1));
                }
            for (int i = 0; i < n; ++i) {
                add_root(root_vec({{1 + i, 2}}), Parity::Even, 0, unit_matrix(N, sp(i), sp(n + i), 1));
                add_root(root_vec({{1 + i, -2}}), Parity::Even, 0, unit_matrix(N, sp(n + i), sp(i), 1));
            }
            // odd roots: C = upper-right block, D determined by the form
            for (int j = 0; j < n; ++j) {
                add_root(root_vec({{0, 1}, {1 + j, -1}}), Parity::Odd, 1, // e - d_j
                         unit_matrix(N, 0, sp(j), 1) + unit_matrix(N, sp(n + j), 1, 1));
                add_root(root_vec({{0, 1}, {1 + j, 1}}), Parity::Odd, 1, // e + d_j
                         unit_matrix(N, 0, sp(n + j), 1) - unit_matrix(N, sp(j), 1, 1));
                add_root(root_vec({{0, -1}, {1 + j, -1}}), Parity::Odd, -1, // -e - d_j
                         unit_matrix(N, 1, sp(j), 1) + unit_matrix(N, sp(n + j), 0, 1));
                add_root(root_vec({{0, -1}, {1 + j, 1}}), Parity::Odd, -1, // -e + d_j
                         unit_matrix(N, 1, sp(n + j), 1) - unit_matrix(N, sp(j), 0, 1));
            }
        }

        // Assign canonical groups and order.
        auto group_of = [&](const BasisElem& b) {
            if (!b.root) return Group::Toral;
            bool positive = std::find(rd.pos_even.begin(), rd.pos_even.end(), *b.root) != rd.pos_even.end() ||
                            std::find(rd.pos_odd.begin(), rd.pos_odd.end(), *b.root) != rd.pos_odd.end();
            if (b.parity == Parity::Odd) return positive ? Group::PosOdd : Group::NegOdd;
            return positive ? Group::PosEven : Group::NegEven;
        };
        for (auto& b : raw) b.group = group_of(b);
        std::stable_sort(raw.begin(), raw.end(), [](const BasisElem& a, const BasisElem& b) {
            if (a.group != b.group) return static_cast<int>(a.group) < static_cast<int>(b.group);
            if (a.root && b.root) return *a.root < *b.root;
            return false; // torals keep construction order
        });
        basis = std::move(raw);
        for (int g = 0; g <= 5; ++g) group_begin_[static_cast<size_t>(g)] = 0;
        for (size_t i = 0; i < basis.size(); ++i) {
            for (int g = static_cast<int>(basis[i].group) + 1; g <= 5; ++g)
                group_begin_[static_cast<size_t>(g)] = static_cast<int>(i) + 1;
            if (basis[i].root) root_index_[*basis[i].root] = static_cast<int>(i);
        }
    }

    void build_expander() {
        int N = matrix_size();
        Matrix B(F(), N * N, dim() + N * N);
        for (int c = 0; c < dim(); ++c)
            for (int r = 0; r < N; ++r)
                for (int s = 0; s < N; ++s) B.at(r * N + s, c) = basis[static_cast<size_t>(c)].mat.at(r, s);
        for (int r = 0; r < N * N; ++r) B.at(r, dim() + r) = F()->one();
        expander_pivots_ = gf::row_reduce(B);
        expander_ = std::move(B);
    }

    /// Coordinates of a matrix in the basis; throws if it is not in the span.
    Coords expand(const Matrix& mmat) const {
        int N = matrix_size();
        // y = RowOps * vec(m); pivot rows give coordinates, the rest must vanish.
        std::vector<FqElem> vec(static_cast<size_t>(N) * N, F()->zero());
        for (int r = 0; r < N; ++r)
            for (int s = 0; s < N; ++s) vec[static_cast<size_t>(r) * N + s] = mmat.at(r, s);
        Coords out(basis.size(), F()->zero());
        for (int row = 0; row < N * N; ++row) {
            FqElem y = F()->zero();
            for (int c = 0; c < N * N; ++c) {
                const FqElem& w = expander_.at(row, dim() + c);
                if (!w.is_zero() && !vec[static_cast<size_t>(c)].is_zero()) y += w * vec[static_cast<size_t>(c)];
            }
            bool pivot_in_basis = row < static_cast<int>(expander_pivots_.size()) &&
                                  expander_pivots_[static_cast<size_t>(row)] < dim();
            if (pivot_in_basis)
                out[static_cast<size_t>(expander_pivots_[static_cast<size_t>(row)])] = y;
            else if (!y.is_zero())
                throw std::logic_error("expand: matrix not in the algebra span");
        }
        return out;
    }

    void build_structure_constants() {
        sc_.assign(basis.size() * basis.size(), Coords());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                const Matrix& a = basis[static_cast<size_t>(i)].mat;
                const Matrix& b = basis[static_cast<size_t>(j)].mat;
                bool both_odd = !is_even(i) && !is_even(j);
                Matrix br = both_odd ? a * b + b * a : a * b - b * a;
                sc_[static_cast<size_t>(i) * basis.size() + static_cast<size_t>(j)] = expand(br);
            }
    }

    void build_p_power_table() {
        for (int i = 0; i < dim(); ++i)
            if (is_even(i)) p_power_table_[i] = expand(basis[static_cast<size_t>(i)].mat.power(p()));
    }

    void verify_construction() {
        const FqElem zero = F()->zero();
        // roots match the adjoint action of the torals
        for (int h = toral_begin(); h < toral_end(); ++h)
            for (int i = 0; i < dim(); ++i) {
                if (is_toral(i)) continue;
                const Coords& br = bracket_basis(h, i);
                FqElem expected = root_eval(*basis[static_cast<size_t>(i)].root, h);
                for (int t = 0; t < dim(); ++t) {
                    FqElem want = (t == i) ? expected : zero;
                    if (br[static_cast<size_t>(t)] != want)
                        throw std::logic_error("construction: [h, X_alpha] != alpha(h) X_alpha");
                }
            }
        // super skew symmetry, parity and z-degree additivity, abelian g_{+-1}
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) {
                const Coords& br = bracket_basis(i, j);
                const Coords& rev = bracket_basis(j, i);
                bool both_odd = !is_even(i) && !is_even(j);
                int zsum = basis[static_cast<size_t>(i)].zdeg + basis[static_cast<size_t>(j)].zdeg;
                bool odd_result = is_even(i) != is_even(j);
                for (int t = 0; t < dim(); ++t) {
                    FqElem lhs = br[static_cast<size_t>(t)];
                    FqElem rhs = both_odd ? rev[static_cast<size_t>(t)] : -rev[static_cast<size_t>(t)];
                    if (lhs != rhs) throw std::logic_error("construction: super skew-symmetry fails");
                    if (!lhs.is_zero()) {
                        if (basis[static_cast<size_t>(t)].zdeg != zsum)
                            throw std::logic_error("construction: z-degree additivity fails");
                        if ((basis[static_cast<size_t>(t)].parity == Parity::Odd) != odd_result)
                            throw std::logic_error("construction: parity additivity fails");
                    }
                }
                if (zsum < -1 || zsum > 1)
                    for (int t = 0; t < dim(); ++t)
                        if (!br[static_cast<size_t>(t)].is_zero())
                            throw std::logic_error("construction: g_1 / g_{-1} not abelian");
            }
        // super Jacobi on basis triples
        for (int i = 0; i < dim(); ++i)
            for (int j = i; j < dim(); ++j)
                for (int k = j; k < dim(); ++k) {
                    Coords t1 = bracket(unit_coords(i), bracket_basis(j, k));
                    Coords t2 = bracket(unit_coords(j), bracket_basis(k, i));
                    Coords t3 = bracket(unit_coords(k), bracket_basis(i, j));
                    int si = sign_pair(i, k), sj = sign_pair(j, i), sk = sign_pair(k, j);
                    for (int t = 0; t < dim(); ++t) {
                        FqElem s = apply_sign(t1[static_cast<size_t>(t)], si) +
                                   apply_sign(t2[static_cast<size_t>(t)], sj) +
                                   apply_sign(t3[static_cast<size_t>(t)], sk);
                        if (!s.is_zero()) throw std::logic_error("construction: super Jacobi identity fails");
                    }
                }
        // p-power normalization: torals are fixed, root vectors power to zero
        for (int i = 0; i < dim(); ++i) {
            if (!is_even(i)) continue;
            const Coords& pp = p_power_basis(i);
            for (int t = 0; t < dim(); ++t) {
                FqElem want = (is_toral(i) && t == i) ? F()->one() : zero;
                if (pp[static_cast<size_t>(t)] != want)
                    throw std::logic_error("construction: p-power table off normal form");
            }
        }
    }

    int sign_pair(int a, int b) const {
        return (!is_even(a) && !is_even(b)) ? -1 : 1;
    }
    FqElem apply_sign(const FqElem& x, int s) const { return s < 0 ? -x : x; }
};

inline SuperAlgebra algebra_make(Family family, int m, int n, uint32_t p, int k) {
    return SuperAlgebra(family, m, n, p, k);
}

} // namespace superverma::liesuper
