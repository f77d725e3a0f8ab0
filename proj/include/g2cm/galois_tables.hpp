#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "g2cm/cmfield.hpp"

namespace g2cm {

enum class GroupKind { C4, V4, D4 };
std::string to_string(GroupKind k);

using Subgroup = std::uint32_t;  // bitmask over element indices

// C4 = <g>, V4 = {1, a1, a2, b}, D4 = <x, y | x^2, y^4, xyxy>.
class FiniteGroup {
public:
    static const FiniteGroup& get(GroupKind kind);

    GroupKind kind() const { return kind_; }
    int order() const { return static_cast<int>(names_.size()); }
    int mul(int a, int b) const;
    int inv(int a) const;
    const std::string& name(int a) const { return names_[a]; }
    int parse(const std::string& label) const;

    Subgroup all() const { return (Subgroup(1) << order()) - 1; }
    Subgroup generated(const std::vector<int>& gens) const;
    Subgroup parse_subgroup(const std::string& text) const;  // "1", "G" or generators "x,y2"
    std::vector<Subgroup> subgroups() const;
    Subgroup conjugate(Subgroup s, int a) const;  // a s a^-1
    bool is_normal_in(Subgroup n, Subgroup g) const;
    bool quotient_is_cyclic(Subgroup g, Subgroup n) const;
    std::string subgroup_to_string(Subgroup s) const;

    // fixed groups of the fields of interest
    Subgroup H_K() const;
    Subgroup H_Kplus() const;

private:
    GroupKind kind_;
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
};

int subgroup_order(Subgroup s);

struct IdPair {
    Subgroup I, D;
};

std::vector<IdPair> enumerate_id_pairs(const FiniteGroup& G);

// One prime of N^H per double coset H a D.
struct CosetPrime {
    int rep;
    int e, f;
};
std::vector<CosetPrime> primes_from_pair(const FiniteGroup& G, Subgroup H, Subgroup I, Subgroup D);
SplittingShape shape_from_pair(const FiniteGroup& G, Subgroup H, Subgroup I, Subgroup D);

enum class TableKind { Cyclic, Biquadratic, NonGalois };
std::string to_string(TableKind k);
TableKind parse_table_kind(const std::string& s);
GroupKind group_of(TableKind k);

struct PrintedPrime {
    std::string label;
    int e;
};

struct PrintedColumn {
    std::string field;  // "N", "K", "K+", "K*", "K*+"
    std::string text;
    std::vector<PrintedPrime> primes;
};

struct TableRow {
    std::string id;  // e.g. "nonGalois.xiv"
    TableKind table;
    std::string I_text, D_text;
    Subgroup I, D;
    std::vector<PrintedColumn> columns;
    std::string type_norm;  // opaque
    int a, f;
    bool superspecial;
};

const std::vector<TableRow>& table_rows(TableKind kind);
std::vector<std::pair<std::string, Subgroup>> subfield_groups(TableKind kind);

struct ColumnCheck {
    std::string row, field, printed, computed;
    bool exponents_match, labels_match;
};

struct TableVerification {
    int rows = 0, columns = 0;
    std::vector<ColumnCheck> mismatches;      // exponent mismatches
    std::vector<ColumnCheck> label_mismatches;  // printed prime labels in the wrong double coset
    std::vector<std::string> duplicate_pairs;   // rows printing the same (I, D)
    std::vector<std::string> missing_pairs;     // admissible pairs with no row
    std::vector<std::string> profile_errors;    // a, f, ss inconsistent
    bool ok() const { return mismatches.empty() && label_mismatches.empty() && profile_errors.empty(); }
};

TableVerification verify_table(TableKind kind);

// Rows whose (K, K+) shapes coincide; expected empty for the cyclic table.
std::vector<std::pair<std::string, std::string>> shape_collisions(TableKind kind, bool with_marked_constituent);

struct Prediction {
    const TableRow* row;
    std::vector<std::pair<std::string, SplittingShape>> shapes;
    bool matches_marked_type = true;  // biquadratic: agrees with the shape in K1
};

struct PredictResult {
    GaloisType type;
    ShapeProfile profile;
    std::optional<SplittingShape> K1_shape;
    std::vector<Prediction> rows;
    std::vector<std::string> warnings;
    int ramification_N = 1;  // max |I| over the matched rows
};

PredictResult predict(const QuarticCMField& K, const Integer& p);

}  // namespace g2cm
