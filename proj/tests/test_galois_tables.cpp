#include "test_support.hpp"

#include <algorithm>
#include <set>

#include "g2cm/galois_tables.hpp"

using namespace g2cm;

namespace {

std::set<std::string> ids(const PredictResult& r) {
    std::set<std::string> s;
    for (const auto& p : r.rows) s.insert(p.row->id);
    return s;
}

}  // namespace

TEST_CASE("group presentations") {
    const auto& D4 = FiniteGroup::get(GroupKind::D4);
    int x = D4.parse("x"), y = D4.parse("y");
    CHECK(D4.mul(D4.mul(x, y), D4.mul(x, y)) == 0);
    CHECK(D4.mul(D4.mul(x, y), x) == D4.parse("y3"));
    CHECK(D4.subgroups().size() == 10);
    CHECK(FiniteGroup::get(GroupKind::C4).subgroups().size() == 3);
    CHECK(FiniteGroup::get(GroupKind::V4).subgroups().size() == 5);
    for (auto k : {GroupKind::C4, GroupKind::V4, GroupKind::D4}) {
        const auto& G = FiniteGroup::get(k);
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b)
                for (int c = 0; c < G.order(); ++c) CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    }
}

TEST_CASE("enumerate_id_pairs counts") {
    CHECK(enumerate_id_pairs(FiniteGroup::get(GroupKind::C4)).size() == 6);
    CHECK(enumerate_id_pairs(FiniteGroup::get(GroupKind::V4)).size() == 11);
    CHECK(enumerate_id_pairs(FiniteGroup::get(GroupKind::D4)).size() == 26);
    CHECK(table_rows(TableKind::Cyclic).size() == 6);
    CHECK(table_rows(TableKind::Biquadratic).size() == 11);
    CHECK(table_rows(TableKind::NonGalois).size() == 26);
}

TEST_CASE("shape_from_pair examples") {
    const auto& D4 = FiniteGroup::get(GroupKind::D4);
    auto H = D4.parse_subgroup("x");
    CHECK(shape_from_pair(D4, H, 1, D4.parse_subgroup("y")) == SplittingShape{{1, 4}});
    CHECK(shape_from_pair(D4, H, D4.parse_subgroup("y2"), D4.parse_subgroup("y")) == SplittingShape{{2, 2}});
    const auto& C4 = FiniteGroup::get(GroupKind::C4);
    for (const auto& p : enumerate_id_pairs(C4)) {
        int n = 4 / subgroup_order(p.D);
        SplittingShape expect(n, {subgroup_order(p.I), subgroup_order(p.D) / subgroup_order(p.I)});
        CHECK(shape_from_pair(C4, 1, p.I, p.D) == expect);
    }
}

TEST_CASE("degree sums over all pairs and subfields") {
    for (auto kind : {TableKind::Cyclic, TableKind::Biquadratic, TableKind::NonGalois}) {
        const auto& G = FiniteGroup::get(group_of(kind));
        for (const auto& p : enumerate_id_pairs(G))
            for (const auto& [name, H] : subfield_groups(kind)) {
                int sum = 0;
                for (auto [e, f] : shape_from_pair(G, H, p.I, p.D)) sum += e * f;
                CHECK(sum == G.order() / subgroup_order(H));
            }
    }
}

TEST_CASE("printed tables are reproduced by the engine") {
    auto c = verify_table(TableKind::Cyclic);
    CHECK(c.ok());
    CHECK(c.duplicate_pairs.empty());
    CHECK(c.missing_pairs.empty());
    auto b = verify_table(TableKind::Biquadratic);
    CHECK(b.ok());
    CHECK(b.missing_pairs.empty());

    auto n = verify_table(TableKind::NonGalois);
    CHECK(n.columns == 26 * 5);
    CHECK(n.label_mismatches.empty());
    CHECK(n.profile_errors.empty());
    // the only disagreement: the N column of row xxvi prints exponent 4 where |I| = 8
    REQUIRE(n.mismatches.size() == 1);
    CHECK(n.mismatches[0].row == "nonGalois.xxvi");
    CHECK(n.mismatches[0].field == "N");
    // row xix repeats the (I, D) of xvii and the pair (<xy3>, <xy,y2>) has no row
    REQUIRE(n.duplicate_pairs.size() == 1);
    CHECK(n.duplicate_pairs[0].find("xix") != std::string::npos);
    REQUIRE(n.missing_pairs.size() == 1);
    const auto& D4 = FiniteGroup::get(GroupKind::D4);
    auto I = D4.parse_subgroup("xy3"), D = D4.parse_subgroup("xy,y2");
    const TableRow& xvii = table_rows(TableKind::NonGalois)[16];
    CHECK(xvii.id == "nonGalois.xvii");
    for (const auto& [name, H] : subfield_groups(TableKind::NonGalois))
        if (name != "N") CHECK(shape_from_pair(D4, H, I, D) == shape_from_pair(D4, H, xvii.I, xvii.D));
}

TEST_CASE("shape signatures") {
    CHECK(shape_collisions(TableKind::Cyclic, false).empty());
    auto bq = shape_collisions(TableKind::Biquadratic, false);
    CHECK(bq == std::vector<std::pair<std::string, std::string>>{{"biquadratic.ii", "biquadratic.iv"},
                                                                 {"biquadratic.v", "biquadratic.ix"},
                                                                 {"biquadratic.vi", "biquadratic.x"}});
    CHECK(shape_collisions(TableKind::Biquadratic, true).empty());
}

TEST_CASE("predict examples") {
    auto cyc = QuarticCMField::make(17, -119, 28);
    CHECK(ids(predict(cyc, 7)) == std::set<std::string>{"cyclic.v"});
    CHECK(ids(predict(cyc, 17)) == std::set<std::string>{"cyclic.vi"});

    auto dih = QuarticCMField::make(11, -67, 20);
    auto p47 = predict(dih, 47);
    CHECK(ids(p47) == std::set<std::string>{"nonGalois.iii", "nonGalois.v"});
    std::set<std::pair<int, int>> af;
    for (const auto& r : p47.rows) af.insert({r.row->a, r.row->f});
    CHECK(af == std::set<std::pair<int, int>>{{2, 0}, {0, 2}});
    auto p13 = predict(dih, 13);
    REQUIRE(p13.rows.size() == 1);
    CHECK(p13.rows[0].row->id == "nonGalois.vii");
    CHECK(p13.rows[0].row->a == 1);
    CHECK(p13.rows[0].row->f == 0);
    for (long p : {89L, 313L}) {
        bool has11 = false;
        for (const auto& r : predict(dih, p).rows) has11 |= r.row->a == 1 && r.row->f == 1;
        CHECK(has11);
    }
    CHECK(ids(predict(dih, 89)) == std::set<std::string>{"nonGalois.xii", "nonGalois.xiv"});
    CHECK(ids(predict(dih, 313)) == std::set<std::string>{"nonGalois.ii", "nonGalois.iv"});

    auto biq = QuarticCMField::make(5, -3, 1);
    auto pb = predict(biq, 3);
    CHECK(std::find(pb.warnings.begin(), pb.warnings.end(), "non-primitive field") != pb.warnings.end());
}

TEST_CASE("predict never returns an empty set") {
    auto dih = QuarticCMField::make(11, -67, 20);
    auto cyc = QuarticCMField::make(17, -119, 28);
    auto biq = QuarticCMField::make(5, -3, 1);
    Integer p = 2;
    for (int i = 0; i < 60; ++i) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        for (const auto* K : {&dih, &cyc, &biq}) {
            auto r = predict(*K, p);
            CHECK(!r.rows.empty());
            if (K == &biq) {
                int marked = 0;
                for (const auto& row : r.rows) marked += row.matches_marked_type;
                CHECK(marked == 1);
            }
        }
    }
}
