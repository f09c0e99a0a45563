#include "qsv/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "json.hpp"

#include "qsv/replay.hpp"

namespace qsv {

namespace detail {
extern const std::string_view builtin_catalog_json;
}

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool has_symbolic(const Bindings& b)
{
    return std::any_of(b.begin(), b.end(), [](const auto& kv) { return kv.second.kind == Binding::Kind::Symbolic; });
}

std::map<std::string, std::string> param_strings(const Bindings& b)
{
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : b) out[k] = v.to_string();
    return out;
}

template <class Ring>
std::optional<Mismatch> compare(const Laurent<Ring>& a, const Laurent<Ring>& b, const Ring& ring)
{
    const long lo = std::min(a.offset, b.offset);
    const long hi = std::min(a.prec(), b.prec());
    for (long n = lo; n <= hi; ++n) {
        const auto x = a.coeff(n);
        const auto y = b.coeff(n);
        if (!ring.equal(x, y)) return Mismatch{n, ring.to_string(x), ring.to_string(y)};
    }
    return std::nullopt;
}

template <class Ring>
std::optional<Mismatch> compare_series(const Series<Ring>& a, const Series<Ring>& b)
{
    if (auto n = first_mismatch(a, b))
        return Mismatch{static_cast<long>(*n), a.ring().to_string(a[*n]), a.ring().to_string(b[*n])};
    return std::nullopt;
}

template <class Ring>
std::optional<Mismatch> compare_sides(const Catalog& c, const IdentityRecord& r, const Bindings& b, std::size_t N,
                                      SidePair sp, const Ring& ring)
{
    Evaluator<Ring> left(ring, c.lookup(), sp.lhs);
    Evaluator<Ring> right(ring, c.lookup(), sp.rhs);
    const auto L = left.evaluate_laurent(*r.lhs_expr, b, static_cast<long>(N));
    const auto R = right.evaluate_laurent(*r.rhs_expr, b, static_cast<long>(N));
    return compare(L, R, ring);
}

std::optional<Mismatch> from_z(const std::optional<ZMismatch>& z)
{
    if (!z) return std::nullopt;
    return Mismatch{static_cast<long>(z->exponent), "[z^" + std::to_string(z->z) + "] " + z->first,
                    "[z^" + std::to_string(z->z) + "] " + z->second};
}

std::vector<std::string> family_equations(const std::string& family)
{
    if (family == "abc") return {"fe-A", "fe-B", "fe-C"};
    if (family == "def") return {"deff-D", "deff-E", "deff-F"};
    if (family == "gh") return {"rrr-G", "rrr-H"};
    throw EvalError("unknown family '" + family + "' (expected abc, def or gh)");
}

std::vector<VerifyReport> by_group(const Catalog& c, const std::vector<std::string>& groups, std::size_t order)
{
    std::vector<VerifyReport> out;
    for (const auto& r : c.records()) {
        if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) continue;
        auto v = verify_record(c, r, order);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace

std::string to_string(const SidePair& s)
{
    auto one = [](Side x) { return x == Side::Sum ? std::string("sum") : std::string("prod"); };
    return one(s.lhs) + "/" + one(s.rhs);
}

const Catalog& Catalog::builtin()
{
    static const Catalog c = from_json(detail::builtin_catalog_json);
    return c;
}

Catalog Catalog::from_json(std::string_view text)
{
    Catalog c;
    const json doc = json::parse(text);
    for (const auto& j : doc.at("records")) {
        IdentityRecord r;
        r.id = j.at("id").get<std::string>();
        r.label = j.value("label", r.id);
        r.group = j.value("group", "");
        r.name = j.value("name", "");
        r.kind = j.value("kind", "series");
        r.lhs = j.at("lhs").get<std::string>();
        r.rhs = j.at("rhs").get<std::string>();
        r.note = j.value("note", "");
        r.side_pairs = j.value("sides", "") == "both";
        for (const auto& p : j.value("params", json::array())) {
            ParamSlot s;
            s.name = p.at("name").get<std::string>();
            s.min_exp = p.value("min_exp", 1L);
            s.allow_zero = p.value("allow_zero", false);
            s.allow_symbolic = p.value("allow_symbolic", false);
            s.doc = p.value("doc", "");
            r.params.push_back(std::move(s));
        }
        for (const auto& inst : j.value("instances", json::array())) {
            Bindings b;
            for (const auto& [k, v] : inst.items()) b[k] = Binding::parse(v.get<std::string>());
            r.instances.push_back(std::move(b));
        }
        if (r.kind == "series") {
            try {
                r.lhs_expr = parse_expr(r.lhs);
                r.rhs_expr = parse_expr(r.rhs);
            } catch (const ParseError& e) {
                throw Error("catalog record '" + r.id + "': " + e.what());
            }
        }
        if (c.by_id_.count(r.id)) throw Error("duplicate catalog id '" + r.id + "'");
        c.by_id_[r.id] = c.records_.size();
        if (!r.name.empty()) c.by_name_[r.name] = c.records_.size();
        c.records_.push_back(std::move(r));
    }
    for (const auto& r : c.records_)
        for (const auto& b : r.instances) c.validate(r, b);
    return c;
}

const IdentityRecord* Catalog::find(const std::string& id) const
{
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &records_[it->second];
}

const IdentityRecord& Catalog::get(const std::string& id) const
{
    if (const auto* r = find(id)) return *r;
    throw UnknownIdError(id);
}

const IdentityRecord* Catalog::find_series(const std::string& name) const
{
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &records_[it->second];
}

std::vector<const IdentityRecord*> Catalog::select(const std::string& key) const
{
    std::vector<const IdentityRecord*> out;
    if (const auto* r = find(key)) return {r};
    for (const auto& r : records_)
        if (r.group == key || r.id.rfind(key + "-", 0) == 0) out.push_back(&r);
    return out;
}

SeriesLookup Catalog::lookup() const
{
    return [this](const std::string& name, Side side) -> ExprPtr {
        const auto* r = find_series(name);
        if (!r) return nullptr;
        return side == Side::Sum ? r->lhs_expr : r->rhs_expr;
    };
}

void Catalog::validate(const IdentityRecord& r, const Bindings& b) const
{
    for (const auto& [k, v] : b) {
        auto it = std::find_if(r.params.begin(), r.params.end(), [&](const ParamSlot& s) { return s.name == k; });
        if (it == r.params.end()) throw EvalError(r.id + " has no parameter '" + k + "'");
        if (v.kind == Binding::Kind::Symbolic) {
            if (!it->allow_symbolic) throw EvalError("parameter '" + k + "' of " + r.id + " must be a monomial");
        } else if (v.value.zero) {
            if (!it->allow_zero) throw EvalError("parameter '" + k + "' of " + r.id + " must be nonzero");
        } else if (v.value.exp < it->min_exp) {
            throw EvalError("parameter '" + k + "' of " + r.id + " needs exponent >= " + std::to_string(it->min_exp));
        }
    }
    for (const auto& s : r.params)
        if (!b.count(s.name)) throw EvalError(r.id + " needs parameter '" + s.name + "'");
}

IntSeries sum_side(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order)
{
    const auto& r = c.get(id);
    if (!r.lhs_expr) throw EvalError(id + " has no series sides");
    c.validate(r, b);
    return Evaluator<IntegerRing>(IntegerRing{}, c.lookup(), Side::Sum).evaluate(*r.lhs_expr, b, order);
}

IntSeries product_side(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order)
{
    const auto& r = c.get(id);
    if (!r.rhs_expr) throw EvalError(id + " has no series sides");
    c.validate(r, b);
    return Evaluator<IntegerRing>(IntegerRing{}, c.lookup(), Side::Product).evaluate(*r.rhs_expr, b, order);
}

VerifyReport verify(const Catalog& c, const IdentityRecord& r, const Bindings& b, std::size_t order,
                    const VerifyOptions& opt)
{
    const auto start = Clock::now();
    c.validate(r, b);
    VerifyReport rep{r.id, r.label, order, param_strings(b), true, std::nullopt, 0, ""};
    if (r.kind == "bilateral") {
        const Binding& t = b.at("t");
        rep.first_mismatch = from_z(has_symbolic(b) ? check_bilateral_sum(TPolyRing(opt.t_cap), t, order)
                                                    : check_bilateral_sum(IntegerRing{}, t, order));
    } else {
        std::vector<SidePair> pairs = {SidePair{}};
        if (r.side_pairs) {
            pairs = opt.sides.empty() ? std::vector<SidePair>{{Side::Sum, Side::Sum}, {Side::Product, Side::Product}}
                                      : opt.sides;
            std::string s;
            for (const auto& p : pairs) s += (s.empty() ? "" : ",") + to_string(p);
            rep.params["sides"] = s;
        }
        for (const auto& sp : pairs) {
            rep.first_mismatch = has_symbolic(b) ? compare_sides(c, r, b, order, sp, TPolyRing(opt.t_cap))
                                                 : compare_sides(c, r, b, order, sp, IntegerRing{});
            if (rep.first_mismatch) break;
        }
    }
    rep.pass = !rep.first_mismatch;
    rep.millis = millis_since(start);
    return rep;
}

std::vector<VerifyReport> verify_record(const Catalog& c, const IdentityRecord& r, std::size_t order,
                                        const VerifyOptions& opt)
{
    std::vector<VerifyReport> out;
    if (r.instances.empty()) {
        out.push_back(verify(c, r, {}, order, opt));
    } else {
        for (const auto& b : r.instances) out.push_back(verify(c, r, b, order, opt));
    }
    return out;
}

std::vector<VerifyReport> verify_all(const Catalog& c, std::size_t order, const VerifyOptions& opt)
{
    std::vector<VerifyReport> out;
    for (const auto& r : c.records()) {
        auto v = verify_record(c, r, order, opt);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<VerifyReport> check_equivalences(const Catalog& c, std::size_t order)
{
    return by_group(c, {"equivalence"}, order);
}

std::vector<VerifyReport> check_functional_equations(const Catalog& c, const std::string& family, std::size_t order,
                                                     bool mixed)
{
    std::vector<SidePair> pairs = {{Side::Sum, Side::Sum}, {Side::Product, Side::Product}};
    if (mixed) {
        pairs.push_back({Side::Sum, Side::Product});
        pairs.push_back({Side::Product, Side::Sum});
    }
    std::vector<VerifyReport> out;
    for (const auto& id : family_equations(family)) {
        for (const auto& sp : pairs) {
            VerifyOptions opt;
            opt.sides = {sp};
            out.push_back(verify(c, c.get(id), {}, order, opt));
        }
    }
    return out;
}

std::vector<VerifyReport> check_theta_identities(const Catalog& c, std::size_t order)
{
    return by_group(c, {"theta"}, order);
}

std::vector<VerifyReport> check_euler(const Catalog& c, std::size_t order)
{
    return by_group(c, {"euler", "bilateral"}, order);
}

std::vector<VerifyReport> check_transformations(const Catalog& c, std::size_t order)
{
    return by_group(c, {"transformation"}, order);
}

VerifyReport replay(const Catalog& c, const std::string& id, const Bindings& b, std::size_t order, long t_cap)
{
    const auto start = Clock::now();
    const auto& r = c.get(id);
    if (!has_replay(id)) throw EvalError(id + " has no constant-term replay");
    c.validate(r, b);
    VerifyReport rep{r.id, r.label, order, param_strings(b), true, std::nullopt, 0, ""};
    rep.params["check"] = "replay";
    auto run = [&](const auto& ring) {
        using Ring = std::decay_t<decltype(ring)>;
        const auto out = replay_constant_term(id, ring, b, order);
        Evaluator<Ring> ev(ring, c.lookup());
        const auto lhs = ev.evaluate(*r.lhs_expr, b, order);
        const auto rhs = ev.evaluate(*r.rhs_expr, b, order);
        if (auto m = compare_series(out.ct_first, out.prefactor * lhs)) return m;
        if (auto m = compare_series(out.ct_second, out.prefactor * rhs)) return m;
        return from_z(out.window_mismatch);
    };
    rep.first_mismatch = has_symbolic(b) ? run(TPolyRing(t_cap)) : run(IntegerRing{});
    rep.pass = !rep.first_mismatch;
    rep.millis = millis_since(start);
    return rep;
}

std::vector<VerifyReport> check_replays(const Catalog& c, std::size_t order)
{
    std::vector<VerifyReport> out;
    for (const auto& id : replay_ids()) {
        const auto& r = c.get(id);
        for (const auto& b : r.instances) out.push_back(replay(c, id, b, order));
    }
    return out;
}

std::vector<std::string> family_series(const std::string& family)
{
    if (family == "abc") return {"A", "B", "C"};
    if (family == "def") return {"D", "E", "F"};
    if (family == "gh") return {"G", "H"};
    throw EvalError("unknown family '" + family + "' (expected abc, def or gh)");
}

std::map<std::string, IntSeries> solve_functional_system(const Catalog& c, const std::string& family,
                                                         std::size_t order)
{
    const auto names = family_series(family);
    const auto eqs = family_equations(family);
    std::map<std::string, IntSeries> cur;
    for (const auto& n : names) cur.emplace(n, IntSeries::one(IntegerRing{}, order));
    // Each pass fixes at least one more coefficient of every series.
    for (std::size_t pass = 0; pass <= order + 1; ++pass) {
        Evaluator<IntegerRing> ev(IntegerRing{}, c.lookup());
        for (const auto& [n, s] : cur) ev.set_override(n, s);
        std::map<std::string, IntSeries> next;
        for (std::size_t i = 0; i < names.size(); ++i) next.emplace(names[i], ev.evaluate(*c.get(eqs[i]).rhs_expr, {}, order));
        if (next == cur) return cur;
        cur = std::move(next);
    }
    throw EvalError("functional system did not converge");
}

std::vector<const IdentityRecord*> mutable_records(const Catalog& c)
{
    std::vector<const IdentityRecord*> out;
    for (const auto& r : c.records())
        if (!r.name.empty() && r.params.empty() && (r.group == "septic" || r.group == "normalized")) out.push_back(&r);
    return out;
}

Mutation random_mutation(const Catalog& c, unsigned long seed)
{
    std::mt19937_64 rng(seed);
    const auto recs = mutable_records(c);
    if (recs.empty()) throw EvalError("catalog has no mutable records");
    const auto* r = recs[std::uniform_int_distribution<std::size_t>(0, recs.size() - 1)(rng)];
    ProductSpec spec = parse_product(r->rhs);
    Mutation m;
    m.id = r->id;
    m.before = format_product(spec);
    m.factor = std::uniform_int_distribution<std::size_t>(0, spec.factors.size() - 1)(rng);
    static const char* fields[] = {"offset", "modulus", "power", "sign"};
    m.field = fields[std::uniform_int_distribution<int>(0, 3)(rng)];
    m.delta = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    FactorSpec& f = spec.factors[m.factor];
    if (m.field == "offset") {
        if (f.offset + m.delta < 1) m.delta = -m.delta;
        f.offset += m.delta;
    } else if (m.field == "modulus") {
        if (f.modulus + m.delta < 1) m.delta = -m.delta;
        f.modulus += m.delta;
    } else if (m.field == "power") {
        if (f.power + m.delta == 0) m.delta = -m.delta;
        f.power += static_cast<int>(m.delta);
    } else {
        m.delta = 0;
        f.sign = -f.sign;
    }
    validate_factor(f);
    m.after = format_product(spec);
    return m;
}

VerifyReport verify_mutation(const Catalog& c, const Mutation& m, std::size_t order)
{
    const auto start = Clock::now();
    const auto& r = c.get(m.id);
    VerifyReport rep{r.id, r.label, order, {{"mutation", m.field}, {"product", m.after}}, true, std::nullopt, 0, ""};
    const IntSeries lhs = Evaluator<IntegerRing>(IntegerRing{}, c.lookup()).evaluate(*r.lhs_expr, {}, order);
    const IntSeries rhs = expand_product<IntegerRing>(parse_product(m.after), order);
    rep.first_mismatch = compare_series(lhs, rhs);
    rep.pass = !rep.first_mismatch;
    rep.millis = millis_since(start);
    return rep;
}

}  // namespace qsv
