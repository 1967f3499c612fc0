#include <gtest/gtest.h>

#include "support.hpp"

using namespace parahoric;
using namespace parahoric::perms;

namespace {

PointDatum point(const std::string& label, const char* type, std::vector<int> facet, Perm m = Perm{}, bool bad = true) {
    return make_point(label, parse_affine_type(type), std::move(facet), m, bad);
}

std::vector<BaseCaseKind> kinds(const DecompositionWitness& w) {
    std::vector<BaseCaseKind> k;
    for (const auto& f : w.factors) k.push_back(f.kind);
    return k;
}

GroupDatum c2_datum(int bad, int good) {
    GroupDatum d{0, FiniteGroup::c2(), {}};
    for (int i = 0; i < bad; ++i) d.points.push_back(point("b" + std::to_string(i + 1), "A3~2", {0, 1, 2}, t12()));
    for (int i = 0; i < good; ++i) d.points.push_back(point("g" + std::to_string(i + 1), "A3", {0}, e(), false));
    return d;
}

GroupDatum c3_datum(const std::vector<Perm>& m) {
    GroupDatum d{0, FiniteGroup::c3(), {}};
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto type = twisted_type({Series::D, 4}, m[i].order());
        d.points.push_back(make_point("x" + std::to_string(i + 1), type, all_vertices(type), m[i], true));
    }
    validate(d);
    return d;
}

} // namespace

TEST(PairPartitionGsd2, Examples) {
    auto p = pair_partition_gsd2(c2_datum(2, 0));
    EXPECT_EQ(p.ramified, (Pairing{{"b1", "b2"}}));
    EXPECT_TRUE(p.unramified.empty());
    p = pair_partition_gsd2(c2_datum(4, 0));
    EXPECT_EQ(p.ramified, (Pairing{{"b1", "b2"}, {"b3", "b4"}}));
    p = pair_partition_gsd2(c2_datum(2, 1));
    EXPECT_EQ(p.unramified, (Pairing{{"g1", kPadLabel}}));
}

TEST(PairPartitionGsd2, UserPairingAndErrors) {
    const auto d = c2_datum(4, 2);
    const Gsd2Pairing user{{{"b1", "b3"}, {"b2", "b4"}}, {{"g2", "g1"}}};
    EXPECT_EQ(pair_partition_gsd2(d, user).ramified, user.ramified);
    EXPECT_THROW(pair_partition_gsd2(d, Gsd2Pairing{{{"b1", "b2"}, {"b1", "b4"}}, {{"g1", "g2"}}}), domain_error);
    EXPECT_THROW(pair_partition_gsd2(d, Gsd2Pairing{{{"b1", "g1"}, {"b3", "b4"}}, {{"b2", "g2"}}}), domain_error);
    GroupDatum odd = c2_datum(3, 0);  // not a valid datum, but the pairing check comes first
    EXPECT_THROW(pair_partition_gsd2(odd), domain_error);
    EXPECT_THROW(pair_partition_gsd2(c3_datum({c123(), c132()})), domain_error);
}

TEST(AllPairings, CountsAreDoubleFactorials) {
    EXPECT_EQ(all_pairings({"a", "b"}).size(), 1u);
    EXPECT_EQ(all_pairings({"a", "b", "c", "d"}).size(), 3u);
    EXPECT_EQ(all_pairings({"a", "b", "c", "d", "e", "f"}).size(), 15u);
    EXPECT_EQ(all_pairings({"a", "b", "c"}).size(), 3u);
    EXPECT_EQ(all_pairings({}).size(), 1u);
}

TEST(DegenerateGsd3, Examples) {
    EXPECT_EQ(kinds(degenerate_gsd3(c3_datum({c123(), c123(), c123()}))),
              (std::vector<BaseCaseKind>{BaseCaseKind::EllipticTriple}));
    EXPECT_EQ(kinds(degenerate_gsd3(c3_datum({c123(), c132()}))), (std::vector<BaseCaseKind>{BaseCaseKind::TwistedPair}));
    const auto w = degenerate_gsd3(c3_datum({c123(), c123(), c123(), c132(), c132(), c132()}));
    EXPECT_EQ(kinds(w), (std::vector<BaseCaseKind>{BaseCaseKind::EllipticTriple, BaseCaseKind::EllipticTriple}));
    for (const auto& f : w.factors) EXPECT_NO_THROW(validate(f));
}

TEST(DegenerateGsd3, ScenarioCAndGoodPoints) {
    const auto w = degenerate_gsd3(c3_datum({c123(), e(), c123(), c132(), c132()}));
    EXPECT_EQ(kinds(w), (std::vector<BaseCaseKind>{BaseCaseKind::TwistedPair, BaseCaseKind::TwistedPair,
                                                   BaseCaseKind::UntwistedVacuum}));
    EXPECT_EQ(w.conservation(), (std::vector<Perm>{c123(), c123(), c132(), c132()}));
}

TEST(S3Parity, Examples) {
    EXPECT_TRUE(s3_parity_check(RamificationVector{FiniteGroup::s3(), {t12(), t23(), c132()}}));
    EXPECT_FALSE(s3_parity_check(RamificationVector{FiniteGroup::s3(), {t12(), c123(), c132()}}));
    EXPECT_TRUE(s3_parity_check(RamificationVector{FiniteGroup::s3(), {}}));
    EXPECT_THROW(s3_parity_check(RamificationVector{FiniteGroup::c2(), {t12()}}), domain_error);
}

TEST(S3Reduce, Examples) {
    const auto s3 = FiniteGroup::s3();
    EXPECT_EQ(kinds(s3_reduce({s3, {t12(), t12()}})), (std::vector<BaseCaseKind>{BaseCaseKind::S3Case1}));
    const auto w3 = s3_reduce({s3, {t12(), t23(), c132()}});
    ASSERT_EQ(kinds(w3), (std::vector<BaseCaseKind>{BaseCaseKind::S3Case3}));
    EXPECT_EQ(w3.factors[0].conjugator, e());
    const auto w = s3_reduce({s3, {t12(), t12(), c123(), c132()}});
    ASSERT_EQ(kinds(w), (std::vector<BaseCaseKind>{BaseCaseKind::S3Case1, BaseCaseKind::S3Case2}));
    EXPECT_EQ(w.factors[0].tuple(), (std::vector<Perm>{t12(), t12()}));
    EXPECT_EQ(w.factors[1].tuple(), (std::vector<Perm>{c123(), c132()}));
}

TEST(S3Reduce, ConjugatedResiduals) {
    const auto s3 = FiniteGroup::s3();
    for (const auto& d : s3.elements()) {
        std::vector<Perm> c3, c4;
        for (const auto& g : s3_case3_rep()) c3.push_back(g.conjugated_by(d));
        for (const auto& g : s3_case4_rep()) c4.push_back(g.conjugated_by(d));
        const auto w3 = s3_reduce({s3, c3});
        ASSERT_EQ(w3.factors.size(), 1u);
        EXPECT_EQ(w3.factors[0].kind, BaseCaseKind::S3Case3);
        EXPECT_EQ(w3.factors[0].tuple(), s3_case3_rep());
        EXPECT_EQ(w3.factors[0].original_tuple(), c3);
        const auto w4 = s3_reduce({s3, c4});
        ASSERT_EQ(w4.factors.size(), 1u);
        EXPECT_EQ(w4.factors[0].kind, BaseCaseKind::S3Case4);
        EXPECT_EQ(w4.factors[0].original_tuple(), c4);
    }
}

TEST(S3Reduce, Preconditions) {
    const auto s3 = FiniteGroup::s3();
    EXPECT_THROW(s3_reduce({s3, {t12(), t13()}}), domain_error);
    EXPECT_THROW(s3_reduce({FiniteGroup::c3(), {c123(), c132()}}), domain_error);
    EXPECT_TRUE(s3_reduce({s3, {}}).factors.empty());
    EXPECT_TRUE(s3_reduce({s3, {e(), e()}}).factors.empty());
}

TEST(S3Reduce, InvariantsOnRandomData) {
    gen::Rng rng(101);
    const auto s3 = FiniteGroup::s3();
    for (int iter = 0; iter < 300; ++iter) {
        const auto t = gen::s3_tuple(rng, 10);
        const auto w = s3_reduce({s3, t});
        std::size_t tr = 0, cy = 0, tr_out = 0, cy_out = 0, exceptional = 0;
        std::vector<std::size_t> origins;
        for (const auto& g : t) {
            tr += g.is_transposition();
            cy += g.is_three_cycle();
        }
        for (const auto& f : w.factors) {
            EXPECT_TRUE(product(f.tuple()).is_identity());
            EXPECT_TRUE(product(f.original_tuple()).is_identity());
            EXPECT_NO_THROW(validate(f));
            if (f.kind != BaseCaseKind::S3Case1 && f.kind != BaseCaseKind::S3Case2) ++exceptional;
            for (const auto& p : f.points) {
                (p.monodromy.is_transposition() ? tr_out : cy_out)++;
                origins.push_back(std::stoul(p.label));
            }
        }
        EXPECT_EQ(tr, tr_out);
        EXPECT_EQ(cy, cy_out);
        EXPECT_LE(exceptional, 1u);
        std::sort(origins.begin(), origins.end());
        EXPECT_TRUE(std::adjacent_find(origins.begin(), origins.end()) == origins.end());
        for (auto o : origins) EXPECT_FALSE(t[o].is_identity());
        for (const auto& f : w.factors) {
            const auto again = s3_reduce({s3, f.tuple()});
            ASSERT_EQ(again.factors.size(), 1u);
            EXPECT_EQ(again.factors[0].kind, f.kind);
            EXPECT_EQ(again.factors[0].tuple(), f.tuple());
        }
    }
}

TEST(PQSets, Examples) {
    const auto inv_id = VertexInvolution::identity(4);
    auto s = pq_sets({0, 1}, {1}, inv_id);
    EXPECT_EQ(s.p, (std::vector<int>{1}));
    EXPECT_EQ(s.q, s.p);
    const auto inv = dual_involution({Series::A, 3});
    s = pq_sets({1}, {3}, inv);
    EXPECT_TRUE(s.p.empty());
    EXPECT_EQ(s.q, (std::vector<int>{1}));
    EXPECT_THROW(pq_sets(point("x", "A3", {0}, e(), false), point("y", "A3~2", {0}, t12()), inv), domain_error);
    EXPECT_THROW(pq_sets(point("x", "A3", {0}, e(), false), point("y", "A3", {0}, e(), false),
                         VertexInvolution::identity(3)),
                 domain_error);
}

TEST(LcmaiBound, Examples) {
    EXPECT_EQ(lcmai_bound(std::vector<int>{1, 1, 1}), 1);
    EXPECT_EQ(lcmai_bound(std::vector<int>{2, 2}), 2);
    EXPECT_EQ(lcmai_bound(std::vector<int>{2, 3}), 6);
    EXPECT_THROW(lcmai_bound(std::vector<int>{0}), domain_error);
}

TEST(LcmaiSets, EmptySetIsInadmissible) {
    GroupDatum d{0, FiniteGroup::c2(), {point("x", "A2~2", {0}, t12()), point("y", "A2~2", {1}, t12())}};
    EXPECT_THROW(lcmai_sets(d, pair_partition_gsd2(d)), domain_error);
    EXPECT_THROW(best_lcmai_bound(d), domain_error);
}

TEST(BestLcmaiBound, Examples) {
    gen::Rng rng(5);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(best_lcmai_bound(gen::iwahori_datum(rng, 2)), 1);
    const GroupDatum a22{0, FiniteGroup::c2(), {point("x", "A2~2", {1}, t12()), point("y", "A2~2", {1}, t12())}};
    EXPECT_EQ(best_lcmai_bound(a22), 2);
    EXPECT_EQ(std::lcm(c_delta(a22), best_lcmai_bound(a22)), 2);

    // E6~2 labels (1,2,3,4,2). Pairing {x1,x2},{x3,x4} forces labels 2,2;
    // pairing {x1,x4},{x2,x3} forces 2,3.
    const GroupDatum e6{0,
                        FiniteGroup::c2(),
                        {point("x1", "E6~2", {1, 4}, t12()), point("x2", "E6~2", {1, 2}, t12()),
                         point("x3", "E6~2", {2, 4}, t12()), point("x4", "E6~2", {4}, t12())}};
    validate(e6);
    const auto s1 = lcmai_sets(e6, {{{"x1", "x2"}, {"x3", "x4"}}, {}});
    EXPECT_EQ(lcmai_bound(std::vector<int>{e6.points[0].type.dual_label(s1.ramified[0][0]),
                                           e6.points[0].type.dual_label(s1.ramified[1][0])}),
              2);
    const auto s2 = lcmai_sets(e6, {{{"x1", "x4"}, {"x2", "x3"}}, {}});
    EXPECT_EQ(lcmai_bound(std::vector<int>{e6.points[0].type.dual_label(s2.ramified[0][0]),
                                           e6.points[0].type.dual_label(s2.ramified[1][0])}),
              6);
    EXPECT_EQ(best_lcmai_bound(e6), 2);
}

TEST(LcmaiBundle, LiesInPicDelta) {
    const GroupDatum d{0,
                       FiniteGroup::c2(),
                       {point("x", "A3~2", {1, 2}, t12()), point("y", "A3~2", {2}, t12()),
                        point("u", "A3", {1}), point("v", "A3", {3})}};
    validate(d);
    const auto p = pair_partition_gsd2(d);
    const auto sets = lcmai_sets(d, p);
    EXPECT_EQ(sets.unramified[0], (std::vector<int>{1}));
    const auto cb = lcmai_bundle(d, p, {sets.ramified[0][0]}, {sets.unramified[0][0]});
    EXPECT_EQ(is_pic_delta(d, cb.bundle), cb.charge);
    EXPECT_TRUE(is_dominant(cb.bundle));
}
