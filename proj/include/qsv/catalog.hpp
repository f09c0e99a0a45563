#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsv/evaluator.hpp"
#include "qsv/expr.hpp"
#include "qsv/products.hpp"

namespace qsv {

/// Documented range of one parameter of a record.
struct ParamSlot {
    std::string name;
    long min_exp = 1;
    bool allow_zero = false;
    bool allow_symbolic = false;
    std::string doc;
};

struct IdentityRecord {
    std::string id;
    std::string label;  // equation tag reported next to the id
    std::string group;
    std::string name;   // named series defined by this record (lhs = sum side, rhs = product side), or empty
    std::string kind = "series";  // "series" or "bilateral"
    std::string lhs;
    std::string rhs;
    std::string note;
    bool side_pairs = false;  // lhs/rhs reference named series; checked with both builders
    std::vector<ParamSlot> params;
    std::vector<Bindings> instances;
    ExprPtr lhs_expr;
    ExprPtr rhs_expr;
};

struct Mismatch {
    long exponent = 0;
    std::string lhs;
    std::string rhs;
    bool operator==(const Mismatch&) const = default;
};

struct VerifyReport {
    std::string id;
    std::string label;
    std::size_t order = 0;
    std::map<std::string, std::string> params;
    bool pass = true;
    std::optional<Mismatch> first_mismatch;
    double millis = 0;
    std::string error;  // set when the check could not be evaluated (counts as FAIL)

    bool operator==(const VerifyReport&) const = default;
};

struct SidePair {
    Side lhs = Side::Sum;
    Side rhs = Side::Sum;
};
std::string to_string(const SidePair& s);

struct VerifyOptions {
    /// Degree cap in t used when a parameter is bound to the formal variable t.
    long t_cap = 12;
    /// Side pairs for records whose sides reference named series; empty means sum/sum and prod/prod.
    std::vector<SidePair> sides;
};

class Catalog {
public:
    /// The catalog compiled into the library.
    static const Catalog& builtin();
    static Catalog from_json(std::string_view text);

    const std::vector<IdentityRecord>& records() const { return records_; }
    /// Throws UnknownIdError.
    const IdentityRecord& get(const std::string& id) const;
    const IdentityRecord* find(const std::string& id) const;
    /// Record defining the named series (e.g. "A"), or nullptr.
    const IdentityRecord* find_series(const std::string& name) const;
    /// Records selected by an id, a group name, or an id prefix such as "equiv-ar".
    std::vector<const IdentityRecord*> select(const std::string& key) const;

    SeriesLookup lookup() const;

    /// Throws EvalError when bindings miss a parameter or leave its documented range.
    void validate(const IdentityRecord& r, const Bindings& b) const;

private:
    std::vector<IdentityRecord> records_;
    std::map<std::string, std::size_t> by_id_;
    std::map<std::string, std::size_t> by_name_;
};

IntSeries sum_side(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order);
IntSeries product_side(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order);

/// Compares lhs and rhs of one record instance through q^order.
VerifyReport verify(const Catalog& c, const IdentityRecord& r, const Bindings& b, std::size_t order,
                    const VerifyOptions& opt = {});
/// One report per instance (a single report when the record has no parameters).
std::vector<VerifyReport> verify_record(const Catalog& c, const IdentityRecord& r, std::size_t order,
                                        const VerifyOptions& opt = {});
/// Every record of the catalog, in catalog order.
std::vector<VerifyReport> verify_all(const Catalog& c, std::size_t order, const VerifyOptions& opt = {});

std::vector<VerifyReport> check_equivalences(const Catalog& c, std::size_t order);
/// family is "abc", "def" or "gh"; one report per equation and side pair
/// (sum/sum and prod/prod, plus the two mixed pairings when `mixed`).
std::vector<VerifyReport> check_functional_equations(const Catalog& c, const std::string& family, std::size_t order,
                                                     bool mixed = true);
std::vector<VerifyReport> check_theta_identities(const Catalog& c, std::size_t order);
/// euler-ei, euler-eib and the bilateral identity.
std::vector<VerifyReport> check_euler(const Catalog& c, std::size_t order);
std::vector<VerifyReport> check_transformations(const Catalog& c, std::size_t order);

/// Constant-term replay of one transformation instance: both constant terms against the
/// catalog sides (times the replay prefactor) and the two Laurent expressions on a z-window.
VerifyReport replay(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order,
                    long t_cap = 8);
std::vector<VerifyReport> check_replays(const Catalog& c, std::size_t order);

/// Named series of a functional family ("abc" -> A,B,C; "def" -> D,E,F; "gh" -> G,H).
std::vector<std::string> family_series(const std::string& family);
/// Solves the functional equations of a family by fixed-point iteration from 1.
std::map<std::string, IntSeries> solve_functional_system(const Catalog& c, const std::string& family,
                                                         std::size_t order);

/// A single-field change to one factor of a product side.
struct Mutation {
    std::string id;
    std::size_t factor = 0;
    std::string field;  // offset, modulus, power or sign
    long delta = 0;
    std::string before;
    std::string after;
};

/// Records whose product side can be mutated (closed series identities).
std::vector<const IdentityRecord*> mutable_records(const Catalog& c);
Mutation random_mutation(const Catalog& c, unsigned long seed);
/// Sum side of the record against the mutated product side.
VerifyReport verify_mutation(const Catalog& c, const Mutation& m, std::size_t order);

}  // namespace qsv
