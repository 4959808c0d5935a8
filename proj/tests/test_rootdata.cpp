#include <catch2/catch_amalgamated.hpp>

#include <superverma/rootdata.hpp>

#include <random>

using namespace superverma;
using namespace superverma::rootdata;
using gf::field_make;
using gf::FqElem;

namespace {

Weight wt(const RootData& rd, const gf::FieldCtx* F, std::initializer_list<int> v) {
    std::vector<FqElem> c;
    for (int x : v) c.push_back(F->from_int(x));
    REQUIRE(static_cast<int>(c.size()) == rd.slots);
    return Weight{std::move(c)};
}

Weight rand_weight(const RootData& rd, const gf::FieldCtx* F, std::mt19937_64& rng) {
    std::vector<FqElem> c;
    for (int i = 0; i < rd.slots; ++i) c.push_back(F->from_int(static_cast<int64_t>(rng() % F->p())));
    return Weight{std::move(c)};
}

} // namespace

TEST_CASE("root data: counts, rho, Coxeter numbers") {
    RootData g11 = root_data(Family::gl, 1, 1);
    REQUIRE(g11.pos_even.empty());
    REQUIRE(g11.pos_odd.size() == 1);
    REQUIRE(g11.pos_odd[0] == Root{1, -1});
    REQUIRE(g11.rho0_2 == std::vector<int>{0, 0});
    REQUIRE(g11.rho2 == std::vector<int>{-1, 1}); // rho = -(e1-d1)/2
    REQUIRE(g11.coxeter == 1);

    RootData g21 = root_data(Family::gl, 2, 1);
    REQUIRE(g21.pos_even.size() == 1);
    REQUIRE(g21.pos_odd.size() == 2);
    REQUIRE(g21.coxeter == 2);

    RootData o1 = root_data(Family::osp2, 0, 1);
    REQUIRE(o1.pos_even.size() == 1);
    REQUIRE(o1.pos_odd.size() == 2);
    REQUIRE(o1.coxeter == 2);

    // Closed forms: gl(m|n) has m(m-1)/2 + n(n-1)/2 even and m*n odd positive
    // roots; osp(2|2n) has n^2 and 2n.
    for (auto [m, n] : {std::pair<int, int>{2, 2}, {3, 2}, {1, 3}}) {
        RootData rd = root_data(Family::gl, m, n);
        REQUIRE(static_cast<int>(rd.pos_even.size()) == m * (m - 1) / 2 + n * (n - 1) / 2);
        REQUIRE(static_cast<int>(rd.pos_odd.size()) == m * n);
    }
    for (int n : {1, 2, 3}) {
        RootData rd = root_data(Family::osp2, 0, n);
        REQUIRE(static_cast<int>(rd.pos_even.size()) == n * n);
        REQUIRE(static_cast<int>(rd.pos_odd.size()) == 2 * n);
        REQUIRE(rd.coxeter == 2 * n);
    }

    // 2*rho recomputed directly from the root lists.
    for (const RootData& rd : {root_data(Family::gl, 2, 2), root_data(Family::osp2, 0, 2)}) {
        std::vector<int> acc(static_cast<size_t>(rd.slots), 0);
        for (const auto& a : rd.pos_even)
            for (int i = 0; i < rd.slots; ++i) acc[static_cast<size_t>(i)] += a[static_cast<size_t>(i)];
        for (const auto& b : rd.pos_odd)
            for (int i = 0; i < rd.slots; ++i) acc[static_cast<size_t>(i)] -= b[static_cast<size_t>(i)];
        REQUIRE(acc == rd.rho2);
    }
}

TEST_CASE("bilinear form examples") {
    RootData rd = root_data(Family::gl, 1, 1);
    auto F = field_make(3, 1);
    Root beta{1, -1};
    REQUIRE(rd.form_int(beta, beta) == 0); // isotropic odd root
    REQUIRE(rd.form_int(Root{1, 0}, Root{1, 0}) == 1);
    auto rho = rd.rho_field(F.get());
    REQUIRE(rd.form(rho, beta) == F->zero());
    REQUIRE_THROWS_AS(rd.form_int(Root{1, 0, 0}, beta), std::invalid_argument);
}

TEST_CASE("dot action: pinned values and identities") {
    auto F = field_make(3, 1);

    RootData g11 = root_data(Family::gl, 1, 1);
    REQUIRE(g11.weyl_group().size() == 1); // W trivial: dot action is the identity

    RootData g21 = root_data(Family::gl, 2, 1);
    auto W = g21.weyl_group();
    REQUIRE(W.size() == 2);
    Weight lam = wt(g21, F.get(), {0, 0, 0});
    const WeylElement* swap_w = nullptr;
    for (const auto& w : W)
        if (!w.is_identity()) swap_w = &w;
    REQUIRE(swap_w != nullptr);
    Weight img = g21.dot_action(*swap_w, lam);
    REQUIRE(img == wt(g21, F.get(), {2, 1, 0})); // s.(0,0|0) = (lam2-1, lam1+1 | mu)
    for (const auto& w : W)
        if (w.is_identity()) REQUIRE(g21.dot_action(w, lam) == lam);
}

TEST_CASE("dot action via rho equals via rho0; form is W-invariant (randomized)") {
    std::mt19937_64 rng(5150);
    for (const RootData& rd :
         {root_data(Family::gl, 2, 1), root_data(Family::gl, 2, 2), root_data(Family::osp2, 0, 2)}) {
        auto F = field_make(3, 1);
        auto W = rd.weyl_group();
        for (int iter = 0; iter < 30; ++iter) {
            Weight lam = rand_weight(rd, F.get(), rng);
            const WeylElement& w = W[rng() % W.size()];
            REQUIRE(rd.dot_action(w, lam) == rd.dot_action_via_rho(w, lam));
            Weight mu = rand_weight(rd, F.get(), rng);
            REQUIRE(rd.form(w.apply(lam.coords), w.apply(mu.coords)) == rd.form(lam.coords, mu.coords));
        }
    }
}

TEST_CASE("typicality: gl(1|1) examples and W-invariance") {
    RootData rd = root_data(Family::gl, 1, 1);
    auto F = field_make(3, 1);
    REQUIRE(rd.is_typical(wt(rd, F.get(), {1, 0})));
    REQUIRE_FALSE(rd.is_typical(wt(rd, F.get(), {0, 0})));
    REQUIRE_FALSE(rd.is_typical(wt(rd, F.get(), {1, 2}))); // 1+2 = 0 mod 3

    std::mt19937_64 rng(31);
    for (const RootData& rd2 : {root_data(Family::gl, 2, 1), root_data(Family::osp2, 0, 2)}) {
        auto W = rd2.weyl_group();
        for (int iter = 0; iter < 40; ++iter) {
            Weight lam = rand_weight(rd2, F.get(), rng);
            bool ty = rd2.is_typical(lam);
            for (const auto& w : W) REQUIRE(rd2.is_typical(rd2.dot_action(w, lam)) == ty);
        }
    }
}

TEST_CASE("eval_P examples") {
    auto F = field_make(3, 1);
    RootData g11 = root_data(Family::gl, 1, 1);
    Weight lam = wt(g11, F.get(), {1, 0});
    REQUIRE(g11.eval_P(lam, RootData::PKind::P1) == F->from_int(1));
    REQUIRE(g11.eval_P(lam, RootData::PKind::P0) == F->from_int(1)); // empty product
    REQUIRE(g11.eval_P(lam, RootData::PKind::P) == F->from_int(1));

    RootData g21 = root_data(Family::gl, 2, 1);
    Weight zero = wt(g21, F.get(), {0, 0, 0});
    REQUIRE(g21.eval_P(zero, RootData::PKind::P1) == F->zero()); // (lam+rho|e2-d1) vanishes

    // P0 = 0 whenever some even pairing lies in F_p^* (x^{p-1} = 1).
    REQUIRE(g21.eval_P(zero, RootData::PKind::P0) == F->zero()); // (0+rho0|e1-e2) = 1
    REQUIRE(g21.eval_P(zero, RootData::PKind::P) == F->zero());
}

TEST_CASE("P0 computed with rho equals P0 computed with rho0") {
    // The displayed product is insensitive to replacing rho0 by rho.
    std::mt19937_64 rng(77);
    for (const RootData& rd : {root_data(Family::gl, 2, 2), root_data(Family::osp2, 0, 2)}) {
        auto F = field_make(3, 1);
        for (int iter = 0; iter < 25; ++iter) {
            Weight lam = rand_weight(rd, F.get(), rng);
            auto lr = rd.plus_rho(lam);
            auto lr0 = rd.plus_rho0(lam);
            gf::FqElem a = F->one(), b = F->one();
            for (const auto& al : rd.pos_even) {
                a *= rd.form(lr, al).pow(F->p() - 1) - F->one();
                b *= rd.form(lr0, al).pow(F->p() - 1) - F->one();
            }
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("lambda_chi: counts, errors, extension recovery") {
    RootData rd = root_data(Family::gl, 1, 1);
    auto F3 = field_make(3, 1);
    auto F27 = field_make(3, 3);

    auto lams = rd.lambda_chi(F3.get(), {F3->zero(), F3->zero()});
    REQUIRE(lams.size() == 9);

    try {
        rd.lambda_chi(F3.get(), {F3->from_int(1), F3->zero()});
        FAIL("expected ExtendFieldError");
    } catch (const ExtendFieldError& e) {
        REQUIRE(e.coordinate == 1);
    }

    auto lams27 = rd.lambda_chi(F27.get(), {F27->from_int(1), F27->zero()});
    REQUIRE(lams27.size() == 9);
    for (const auto& l : lams27) {
        REQUIRE(l.coords[0].pow(3) - l.coords[0] == F27->from_int(1));
        REQUIRE(l.coords[1].pow(3) - l.coords[1] == F27->zero());
    }

    // |Lambda_chi| = p^rank whenever solvable.
    RootData g21 = root_data(Family::gl, 2, 1);
    REQUIRE(g21.lambda_chi(F3.get(), {F3->zero(), F3->zero(), F3->zero()}).size() == 27);
}

TEST_CASE("weyl_orbit examples") {
    auto F = field_make(3, 1);
    RootData g11 = root_data(Family::gl, 1, 1);
    Weight l0 = wt(g11, F.get(), {1, 2});
    auto orb = g11.weyl_orbit(l0);
    REQUIRE(orb.size() == 1); // W trivial

    RootData g21 = root_data(Family::gl, 2, 1);
    Weight zero = wt(g21, F.get(), {0, 0, 0});
    auto orb2 = g21.weyl_orbit(zero);
    REQUIRE(orb2.size() == 2);
    REQUIRE(std::count(orb2.begin(), orb2.end(), wt(g21, F.get(), {2, 1, 0})) == 1);

    // Fixed by the dot swap iff lam1 = lam2 - 1.
    Weight fixed = wt(g21, F.get(), {0, 1, 2});
    REQUIRE(g21.weyl_orbit(fixed).size() == 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Weight l = wt(g21, F.get(), {a, b, 0});
            size_t expect = ((a + 1) % 3 == b) ? 1 : 2;
            REQUIRE(g21.weyl_orbit(l).size() == expect);
        }
}

TEST_CASE("regular semisimple chi forces eval_P nonzero on Lambda_chi") {
    // Restatement of the simplicity criterion's forward direction on weights:
    // chi(H_alpha) != 0 for all positive alpha makes lambda(H_alpha) lie
    // outside F_p, so both P factors are nonzero.
    auto F27 = field_make(3, 3);
    RootData g11 = root_data(Family::gl, 1, 1);
    auto lams = g11.lambda_chi(F27.get(), {F27->from_int(1), F27->from_int(1)});
    REQUIRE(lams.size() == 9);
    for (const auto& l : lams) REQUIRE(g11.eval_P(l, RootData::PKind::P) != F27->zero());

    RootData g21 = root_data(Family::gl, 2, 1);
    auto lams2 = g21.lambda_chi(F27.get(), {F27->from_int(1), F27->zero(), F27->from_int(1)});
    REQUIRE(lams2.size() == 27);
    for (const auto& l : lams2) REQUIRE(g21.eval_P(l, RootData::PKind::P) != F27->zero());
}

TEST_CASE("sl(m|n) weights: toral values round-trip and canonical lift") {
    RootData sl21 = root_data(Family::sl, 2, 1);
    REQUIRE(sl21.rank == 2);
    auto F = field_make(3, 3);
    auto lams = sl21.lambda_chi(F.get(), {F->from_int(1), F->from_int(2)});
    REQUIRE(lams.size() == 9);
    for (const auto& l : lams) {
        auto tv = sl21.toral_values(l);
        REQUIRE(tv[0] == l.coords[0] - l.coords[1]);
        REQUIRE(tv[1] == l.coords[1] + l.coords[2]);
        REQUIRE(l.coords[2] == F->zero()); // canonical lift pins the last delta slot
    }
}

TEST_CASE("weight text format") {
    RootData rd = root_data(Family::gl, 2, 1);
    auto F27 = field_make(3, 3);
    Weight l = rd.parse_weight(F27.get(), "t+1,2,0");
    REQUIRE(l.coords[0] == F27->from_coeffs({1, 1}));
    REQUIRE(l.coords[1] == F27->from_int(2));
    REQUIRE(l.str() == "t+1,2,0");
    bool has_e1d1 = false;
    for (const auto& b : rd.pos_odd) has_e1d1 |= rd.root_str(b) == "e1-d1";
    REQUIRE(has_e1d1);
    RootData o2 = root_data(Family::osp2, 0, 2);
    bool has2d = false;
    for (const auto& a : o2.pos_even) has2d |= o2.root_str(a) == "2d1";
    REQUIRE(has2d);
}
