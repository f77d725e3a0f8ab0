#include "g2cm/galois_tables.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace g2cm {

std::string to_string(GroupKind k) {
    switch (k) {
        case GroupKind::C4: return "C4";
        case GroupKind::V4: return "V4";
        case GroupKind::D4: return "D4";
    }
    return "?";
}

std::string to_string(TableKind k) {
    switch (k) {
        case TableKind::Cyclic: return "cyclic";
        case TableKind::Biquadratic: return "biquadratic";
        case TableKind::NonGalois: return "nonGalois";
    }
    return "?";
}

TableKind parse_table_kind(const std::string& s) {
    std::string t;
    for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "cyclic") return TableKind::Cyclic;
    if (t == "biquadratic" || t == "bi-quadratic") return TableKind::Biquadratic;
    if (t == "nongalois" || t == "non-galois" || t == "dihedral") return TableKind::NonGalois;
    throw DomainError("unknown table kind '" + s + "'");
}

GroupKind group_of(TableKind k) {
    switch (k) {
        case TableKind::Cyclic: return GroupKind::C4;
        case TableKind::Biquadratic: return GroupKind::V4;
        case TableKind::NonGalois: return GroupKind::D4;
    }
    return GroupKind::D4;
}

int subgroup_order(Subgroup s) { return __builtin_popcount(s); }

const FiniteGroup& FiniteGroup::get(GroupKind kind) {
    static const std::vector<FiniteGroup> groups = [] {
        std::vector<FiniteGroup> v(3);
        v[0].kind_ = GroupKind::C4;
        v[0].names_ = {"1", "g", "g2", "g3"};
        v[0].table_.assign(4, std::vector<int>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) v[0].table_[a][b] = (a + b) % 4;
        v[1].kind_ = GroupKind::V4;
        v[1].names_ = {"1", "a1", "a2", "b"};
        v[1].table_.assign(4, std::vector<int>(4));
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) v[1].table_[a][b] = a ^ b;
        // x^i y^j is stored as 4i + j
        v[2].kind_ = GroupKind::D4;
        v[2].names_ = {"1", "y", "y2", "y3", "x", "xy", "xy2", "xy3"};
        v[2].table_.assign(8, std::vector<int>(8));
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                int i1 = a / 4, j1 = a % 4, i2 = b / 4, j2 = b % 4;
                int j = ((i2 ? 4 - j1 : j1) + j2) % 4;
                v[2].table_[a][b] = 4 * ((i1 + i2) % 2) + j;
            }
        return v;
    }();
    return groups[static_cast<int>(kind)];
}

int FiniteGroup::mul(int a, int b) const { return table_[a][b]; }

int FiniteGroup::inv(int a) const {
    for (int b = 0; b < order(); ++b)
        if (table_[a][b] == 0) return b;
    throw DomainError("internal error: no inverse");
}

int FiniteGroup::parse(const std::string& label) const {
    std::string t;
    for (char c : label)
        if (c != '^' && c != ' ') t += c;
    if (t == "y1") t = "y";
    if (t == "xy1") t = "xy";
    if (t == "g1") t = "g";
    if (t == "alpha1") t = "a1";
    if (t == "alpha2") t = "a2";
    if (t == "beta") t = "b";
    for (int a = 0; a < order(); ++a)
        if (names_[a] == t) return a;
    throw DomainError("unknown group element '" + label + "' in " + to_string(kind_));
}

Subgroup FiniteGroup::generated(const std::vector<int>& gens) const {
    Subgroup s = 1;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < order(); ++a) {
            if (!(s >> a & 1)) continue;
            for (int g : gens) {
                int c = mul(a, g);
                if (!(s >> c & 1)) {
                    s |= Subgroup(1) << c;
                    grew = true;
                }
            }
        }
    }
    return s;
}

Subgroup FiniteGroup::parse_subgroup(const std::string& text) const {
    if (text == "G") return all();
    if (text == "1") return 1;
    std::vector<int> gens;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) gens.push_back(parse(tok));
    return generated(gens);
}

std::vector<Subgroup> FiniteGroup::subgroups() const {
    std::set<Subgroup> out;
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b) out.insert(generated({a, b}));
    return {out.begin(), out.end()};
}

Subgroup FiniteGroup::conjugate(Subgroup s, int a) const {
    Subgroup r = 0;
    int ai = inv(a);
    for (int h = 0; h < order(); ++h)
        if (s >> h & 1) r |= Subgroup(1) << mul(mul(a, h), ai);
    return r;
}

bool FiniteGroup::is_normal_in(Subgroup n, Subgroup g) const {
    if ((n & g) != n) return false;
    for (int a = 0; a < order(); ++a)
        if ((g >> a & 1) && conjugate(n, a) != n) return false;
    return true;
}

bool FiniteGroup::quotient_is_cyclic(Subgroup g, Subgroup n) const {
    int index = subgroup_order(g) / subgroup_order(n);
    for (int a = 0; a < order(); ++a) {
        if (!(g >> a & 1)) continue;
        int k = 1, c = a;
        while (!(n >> c & 1)) {
            c = mul(c, a);
            ++k;
        }
        if (k == index) return true;
    }
    return false;
}

std::string FiniteGroup::subgroup_to_string(Subgroup s) const {
    if (s == 1) return "{1}";
    if (s == all()) return "G";
    // smallest generating set, preferring earlier elements
    std::vector<int> elems;
    for (int a = 1; a < order(); ++a)
        if (s >> a & 1) elems.push_back(a);
    for (int a : elems)
        if (generated({a}) == s) return "<" + names_[a] + ">";
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i + 1; j < elems.size(); ++j)
            if (generated({elems[i], elems[j]}) == s) return "<" + names_[elems[i]] + "," + names_[elems[j]] + ">";
    return "?";
}

Subgroup FiniteGroup::H_K() const { return kind_ == GroupKind::D4 ? parse_subgroup("x") : 1; }

Subgroup FiniteGroup::H_Kplus() const {
    switch (kind_) {
        case GroupKind::C4: return parse_subgroup("g2");
        case GroupKind::V4: return parse_subgroup("b");
        case GroupKind::D4: return parse_subgroup("x,y2");
    }
    return 1;
}

std::vector<IdPair> enumerate_id_pairs(const FiniteGroup& G) {
    std::vector<IdPair> out;
    auto subs = G.subgroups();
    std::sort(subs.begin(), subs.end(), [](Subgroup a, Subgroup b) {
        return subgroup_order(a) != subgroup_order(b) ? subgroup_order(a) < subgroup_order(b) : a < b;
    });
    for (Subgroup I : subs)
        for (Subgroup D : subs)
            if (G.is_normal_in(I, D) && G.quotient_is_cyclic(D, I)) out.push_back({I, D});
    return out;
}

std::vector<CosetPrime> primes_from_pair(const FiniteGroup& G, Subgroup H, Subgroup I, Subgroup D) {
    std::vector<CosetPrime> out;
    Subgroup seen = 0;
    for (int a = 0; a < G.order(); ++a) {
        if (seen >> a & 1) continue;
        for (int h = 0; h < G.order(); ++h)
            if (H >> h & 1)
                for (int d = 0; d < G.order(); ++d)
                    if (D >> d & 1) seen |= Subgroup(1) << G.mul(G.mul(h, a), d);
        Subgroup Ia = G.conjugate(I, a), Da = G.conjugate(D, a);
        int e = subgroup_order(Ia) / subgroup_order(Ia & H);
        int f_total = subgroup_order(Da) / subgroup_order(Ia);
        int f_top = subgroup_order(Da & H) / subgroup_order(Ia & H);
        out.push_back({a, e, f_total / f_top});
    }
    return out;
}

SplittingShape shape_from_pair(const FiniteGroup& G, Subgroup H, Subgroup I, Subgroup D) {
    SplittingShape s;
    for (const auto& q : primes_from_pair(G, H, I, D)) s.emplace_back(q.e, q.f);
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<std::pair<std::string, Subgroup>> subfield_groups(TableKind kind) {
    const auto& G = FiniteGroup::get(group_of(kind));
    switch (kind) {
        case TableKind::Cyclic: return {{"K", G.H_K()}, {"K+", G.H_Kplus()}};
        case TableKind::Biquadratic: return {{"K", G.H_K()}, {"K+", G.H_Kplus()}};
        case TableKind::NonGalois:
            return {{"N", 1},
                    {"K", G.H_K()},
                    {"K+", G.H_Kplus()},
                    {"K*", G.parse_subgroup("xy3")},
                    {"K*+", G.parse_subgroup("xy3,y2")}};
    }
    return {};
}

namespace {

struct RawRow {
    const char* id;
    const char* I;
    const char* D;
    std::vector<const char*> cols;
    const char* type_norm;
    int a, f;
    bool ss;
};

// Printed decompositions: "label^e" per prime, labels as double coset representatives.
const std::vector<RawRow>& raw_rows(TableKind kind) {
    static const std::vector<RawRow> cyclic = {
        {"i", "1", "1", {"1 g g2 g3", "1 g"}, "", 0, 2, false},
        {"ii", "1", "g2", {"1 g", "1 g"}, "", 2, 0, true},
        {"iii", "1", "G", {"1", "1"}, "", 1, 0, false},
        {"iv", "g2", "g2", {"1^2 g^2", "1 g"}, "", 2, 0, true},
        {"v", "g2", "G", {"1^2", "1"}, "", 2, 0, true},
        {"vi", "G", "G", {"1^4", "1^2"}, "", 2, 0, true},
    };
    static const std::vector<RawRow> biquadratic = {
        {"i", "1", "1", {"1 a1 b a2", "1 a1"}, "", 0, 2, false},
        {"ii", "1", "a1", {"1 b", "1"}, "", 0, 2, false},
        {"iii", "1", "b", {"1 a1", "1 a1"}, "", 2, 0, true},
        {"iv", "1", "a2", {"1 b", "1"}, "", 2, 0, true},
        {"v", "a1", "a1", {"1^2 b^2", "1^2"}, "", 0, 2, false},
        {"vi", "a1", "G", {"1^2", "1^2"}, "", 2, 0, true},
        {"vii", "b", "b", {"1^2 a1^2", "1 a1"}, "", 2, 0, true},
        {"viii", "b", "G", {"1^2", "1"}, "", 2, 0, true},
        {"ix", "a2", "a2", {"1^2 b^2", "1^2"}, "", 2, 0, true},
        {"x", "a2", "G", {"1^2", "1^2"}, "", 2, 0, true},
        {"xi", "G", "G", {"1^4", "1^2"}, "", 2, 0, true},
    };
    // columns: N, K, K+, K*, K*+
    static const std::vector<RawRow> nongalois = {
        {"i", "1", "1", {"*", "1 y y2 y3", "1 y", "1 y y2 y3", "1 y"}, "p_{K,1} p_{K,y^3}", 0, 2, false},
        {"ii", "1", "x", {"1 y y2 y3", "1 y y2", "1 y", "1 y2", "1"}, "p_{K,1}^2 p_{K,y}", 1, 1, false},
        {"iii", "1", "xy", {"1 y y2 y3", "1 y2", "1", "1 y y3", "1 y"}, "p", 2, 0, true},
        {"iv", "1", "xy2", {"1 y y2 y3", "1 y y3", "1 y", "1 y", "1"}, "p_{K,1} p_{K,y^3}^2", 1, 1, false},
        {"v", "1", "xy3", {"1 y y2 y3", "1 y2", "1", "1 y y2", "1 y"}, "p_{K,1}^2", 0, 2, false},
        {"vi", "1", "y2", {"1 x y xy", "1 y", "1 y", "1 y", "1 y"}, "p", 2, 0, true},
        {"vii", "1", "y", {"1 x", "1", "1", "1", "1"}, "p^2", 1, 0, false},
        {"viii", "y2", "y2", {"1^2 x^2 y^2 xy^2", "1^2 y^2", "1 y", "1^2 y^2", "1 y"}, "p_{K,1} p_{K,y}", 2, 0, true},
        {"ix", "y2", "y", {"1^2 x^2", "1^2", "1", "1^2", "1"}, "p", 2, 0, true},
        {"x", "y2", "x,y2", {"1^2 y^2", "1^2 y^2", "1 y", "1^2", "1"}, "p", 2, 0, true},
        {"xi", "y2", "xy,y2", {"1^2 y^2", "1^2", "1", "1^2 y^2", "1 y"}, "p", 2, 0, true},
        {"xii", "x", "x", {"1^2 y^2 y2^2 y3^2", "1 y^2 y2", "1 y", "1^2 y2^2", "1^2"}, "p_{K,1} p_{K,y}", 1, 1, false},
        {"xiii", "x", "x,y2", {"1^2 y^2", "1 y^2", "1 y", "1^2", "1^2"}, "p", 2, 0, true},
        {"xiv", "xy2", "xy2", {"1^2 y^2 y2^2 y3^2", "1^2 y y3", "1 y", "1^2 y^2", "1^2"}, "p_{K,1} p_{K,y^3} (triangle)", 1, 1, false},
        {"xv", "xy2", "x,y2", {"1^2 y^2", "1^2 y", "1 y", "1^2", "1^2"}, "p", 2, 0, true},
        {"xvi", "xy", "xy", {"1^2 y^2 y2^2 y3^2", "1^2 y3^2", "1^2", "1^2 y y3", "1 y"}, "p_{K,1} p_{K,y^3} (triangle)", 2, 0, true},
        {"xvii", "xy", "xy,y2", {"1^2 y^2", "1^2", "1^2", "1^2 y", "1 y"}, "p", 2, 0, true},
        {"xviii", "xy3", "xy3", {"1^2 y^2 y2^2 y3^2", "1^2 y^2", "1^2", "1 y^2 y2", "1 y"}, "p_{K,1}^2 (triangle)", 2, 0, true},
        {"xix", "xy", "xy,y2", {"1^2 y^2", "1^2", "1^2", "1^2 y", "1 y"}, "p", 2, 0, true},
        {"xx", "y", "y", {"1^4 x^4", "1^4", "1^2", "1^4", "1^2"}, "p_{K,1}^2", 2, 0, true},
        {"xxi", "y", "G", {"1^4", "1^4", "1^2", "1^4", "1^2"}, "p", 2, 0, true},
        {"xxii", "x,y2", "x,y2", {"1^4 y^4", "1^2 y^2", "1 y", "1^4", "1^2"}, "p_{K,1} p_{K,y}", 2, 0, true},
        {"xxiii", "x,y2", "G", {"1^4", "1^2", "1", "1^4", "1^2"}, "p", 2, 0, true},
        {"xxiv", "xy,y2", "xy,y2", {"1^4 y^4", "1^4", "1^2", "1^2 y^2", "1 y"}, "p_{K,1}^2", 2, 0, true},
        {"xxv", "xy,y2", "G", {"1^4", "1^4", "1^2", "1^2", "1"}, "p", 2, 0, true},
        {"xxvi", "G", "G", {"1^4", "1^4", "1^2", "1^4", "1^2"}, "p", 2, 0, true},
    };
    switch (kind) {
        case TableKind::Cyclic: return cyclic;
        case TableKind::Biquadratic: return biquadratic;
        case TableKind::NonGalois: return nongalois;
    }
    return cyclic;
}

std::vector<PrintedPrime> parse_printed(const FiniteGroup& G, const std::string& text) {
    std::vector<PrintedPrime> out;
    if (text == "*") {
        for (int a = 0; a < G.order(); ++a) out.push_back({G.name(a), 1});
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        auto pos = tok.find('^');
        PrintedPrime q{tok.substr(0, pos), pos == std::string::npos ? 1 : std::stoi(tok.substr(pos + 1))};
        G.parse(q.label);
        out.push_back(q);
    }
    return out;
}

std::vector<TableRow> build_rows(TableKind kind) {
    const auto& G = FiniteGroup::get(group_of(kind));
    auto fields = subfield_groups(kind);
    std::vector<TableRow> rows;
    for (const auto& r : raw_rows(kind)) {
        TableRow t;
        t.id = to_string(kind) + "." + r.id;
        t.table = kind;
        t.I_text = r.I;
        t.D_text = r.D;
        t.I = G.parse_subgroup(r.I);
        t.D = G.parse_subgroup(r.D);
        for (size_t c = 0; c < r.cols.size(); ++c)
            t.columns.push_back({fields[c].first, r.cols[c], parse_printed(G, r.cols[c])});
        t.type_norm = r.type_norm;
        t.a = r.a;
        t.f = r.f;
        t.superspecial = r.ss;
        rows.push_back(t);
    }
    return rows;
}

}  // namespace

const std::vector<TableRow>& table_rows(TableKind kind) {
    static const std::vector<TableRow> rows[3] = {build_rows(TableKind::Cyclic), build_rows(TableKind::Biquadratic),
                                                  build_rows(TableKind::NonGalois)};
    return rows[static_cast<int>(kind)];
}

namespace {

std::string printed_prime_text(const std::vector<CosetPrime>& primes, const FiniteGroup& G) {
    std::string s;
    for (const auto& q : primes) {
        if (!s.empty()) s += " ";
        s += G.name(q.rep);
        if (q.e > 1) s += "^" + std::to_string(q.e);
        if (q.f > 1) s += "(f=" + std::to_string(q.f) + ")";
    }
    return s;
}

}  // namespace

TableVerification verify_table(TableKind kind) {
    const auto& G = FiniteGroup::get(group_of(kind));
    TableVerification v;
    auto fields = subfield_groups(kind);
    std::map<std::pair<Subgroup, Subgroup>, std::string> seen;
    for (const auto& row : table_rows(kind)) {
        ++v.rows;
        auto key = std::make_pair(row.I, row.D);
        if (seen.count(key)) v.duplicate_pairs.push_back(row.id + " repeats (I, D) of " + seen[key]);
        else seen[key] = row.id;
        if (row.superspecial != (row.a == 2 && row.f == 0) || row.a + row.f > 2 || row.a < 0 || row.f < 0)
            v.profile_errors.push_back(row.id);
        for (const auto& col : row.columns) {
            ++v.columns;
            Subgroup H = 1;
            for (const auto& [name, sub] : fields)
                if (name == col.field) H = sub;
            auto primes = primes_from_pair(G, H, row.I, row.D);
            std::vector<int> printed_e, computed_e;
            for (const auto& q : col.primes) printed_e.push_back(q.e);
            for (const auto& q : primes) computed_e.push_back(q.e);
            std::sort(printed_e.begin(), printed_e.end());
            std::sort(computed_e.begin(), computed_e.end());
            bool exp_ok = printed_e == computed_e;

            // each printed label must name a distinct double coset with the printed exponent
            bool label_ok = col.primes.size() == primes.size();
            std::set<int> used;
            for (const auto& q : col.primes) {
                int a = G.parse(q.label);
                bool found = false;
                for (size_t k = 0; k < primes.size(); ++k) {
                    Subgroup coset = 0;
                    for (int h = 0; h < G.order(); ++h)
                        if (H >> h & 1)
                            for (int d = 0; d < G.order(); ++d)
                                if (row.D >> d & 1) coset |= Subgroup(1) << G.mul(G.mul(h, primes[k].rep), d);
                    if (coset >> a & 1) {
                        found = true;
                        if (used.count(static_cast<int>(k)) || primes[k].e != q.e) label_ok = false;
                        used.insert(static_cast<int>(k));
                    }
                }
                if (!found) label_ok = false;
            }
            ColumnCheck c{row.id, col.field, col.text, printed_prime_text(primes, G), exp_ok, label_ok};
            if (!exp_ok) v.mismatches.push_back(c);
            else if (!label_ok) v.label_mismatches.push_back(c);
        }
    }
    for (const auto& p : enumerate_id_pairs(G))
        if (!seen.count({p.I, p.D}))
            v.missing_pairs.push_back("(" + G.subgroup_to_string(p.I) + ", " + G.subgroup_to_string(p.D) + ")");
    return v;
}

std::vector<std::pair<std::string, std::string>> shape_collisions(TableKind kind, bool with_marked_constituent) {
    const auto& G = FiniteGroup::get(group_of(kind));
    auto fields = subfield_groups(kind);
    if (with_marked_constituent && kind == TableKind::Biquadratic) fields.push_back({"K1", G.parse_subgroup("a1")});
    const auto& rows = table_rows(kind);
    auto signature = [&](const TableRow& r) {
        std::vector<SplittingShape> s;
        for (const auto& [name, H] : fields)
            if (name != "N") s.push_back(shape_from_pair(G, H, r.I, r.D));
        return s;
    };
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j)
            if (signature(rows[i]) == signature(rows[j])) out.emplace_back(rows[i].id, rows[j].id);
    return out;
}

namespace {

IntPoly imaginary_quadratic_model(const Integer& D) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), D.get_mpz_t(), 4);
    if (r == 1) return {(1 - D) / 4, -1, 1};
    return {-D / 4, 0, 1};
}

}  // namespace

PredictResult predict(const QuarticCMField& K, const Integer& p) {
    PredictResult res;
    res.type = galois_type(K);
    res.profile = shape_profile(K, p);
    if (res.profile.experimental) res.warnings.push_back("p = 2 is experimental");
    TableKind kind = res.type == GaloisType::Cyclic        ? TableKind::Cyclic
                     : res.type == GaloisType::Biquadratic ? TableKind::Biquadratic
                                                           : TableKind::NonGalois;
    const auto& G = FiniteGroup::get(group_of(kind));
    if (kind == TableKind::Biquadratic) {
        res.warnings.push_back("non-primitive field");
        auto R = reflex_field(K);
        res.K1_shape = splitting_shape(imaginary_quadratic_model(R.imaginary_discs[R.marked]), p);
    }
    std::map<std::string, SplittingShape> actual{{"K", res.profile.K}, {"K+", res.profile.Kplus}};
    if (res.profile.Kstar) actual["K*"] = *res.profile.Kstar;
    if (res.profile.Kstar_plus) actual["K*+"] = *res.profile.Kstar_plus;
    for (const auto& row : table_rows(kind)) {
        Prediction pr{&row, {}, true};
        bool ok = true;
        for (const auto& [name, H] : subfield_groups(kind)) {
            if (!actual.count(name)) continue;
            auto s = shape_from_pair(G, H, row.I, row.D);
            pr.shapes.emplace_back(name, s);
            if (s != actual[name]) ok = false;
        }
        if (!ok) continue;
        if (res.K1_shape) pr.matches_marked_type = shape_from_pair(G, G.parse_subgroup("a1"), row.I, row.D) == *res.K1_shape;
        res.ramification_N = std::max(res.ramification_N, subgroup_order(row.I));
        res.rows.push_back(pr);
    }
    if (res.rows.empty())
        throw DomainError("internal consistency error: no printed table row matches the shapes at p = " + p.get_str());
    return res;
}

}  // namespace g2cm
