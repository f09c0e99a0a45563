#include "qsv/cli.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsv/recursion.hpp"
#include "qsv/replay.hpp"

namespace qsv {

namespace {

using json = nlohmann::json;
using Task = std::function<std::vector<VerifyReport>()>;

class UsageError : public Error {
public:
    using Error::Error;
};

json report_json(const VerifyReport& r)
{
    json j;
    j["id"] = r.id;
    j["paper_label"] = r.label;
    j["order"] = r.order;
    j["params"] = r.params;
    j["status"] = r.pass ? "PASS" : "FAIL";
    if (r.first_mismatch)
        j["first_mismatch"] = {{"exponent", r.first_mismatch->exponent},
                               {"lhs", r.first_mismatch->lhs},
                               {"rhs", r.first_mismatch->rhs}};
    else
        j["first_mismatch"] = nullptr;
    j["millis"] = r.millis;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

VerifyReport report_from_json(const json& j)
{
    VerifyReport r;
    r.id = j.at("id").get<std::string>();
    r.label = j.at("paper_label").get<std::string>();
    r.order = j.value("order", std::size_t{0});
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    r.pass = j.at("status").get<std::string>() == "PASS";
    if (!j.at("first_mismatch").is_null()) {
        const auto& m = j.at("first_mismatch");
        r.first_mismatch = Mismatch{m.at("exponent").get<long>(), m.at("lhs").get<std::string>(), m.at("rhs").get<std::string>()};
    }
    r.millis = j.at("millis").get<double>();
    r.error = j.value("error", "");
    return r;
}

std::string params_text(const std::map<std::string, std::string>& p)
{
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + v;
    return s;
}

void write_manifest(const RunManifest& m, const std::string& format, std::ostream& os)
{
    if (format == "json") {
        os << manifest_to_json(m) << "\n";
        return;
    }
    if (format == "tsv") {
        os << "id\tpaper_label\tparams\tstatus\texponent\tlhs\trhs\tmillis\n";
        for (const auto& r : m.checks) {
            os << r.id << '\t' << r.label << '\t' << params_text(r.params) << '\t' << (r.pass ? "PASS" : "FAIL") << '\t';
            if (r.first_mismatch) os << r.first_mismatch->exponent << '\t' << r.first_mismatch->lhs << '\t' << r.first_mismatch->rhs;
            else os << "\t\t";
            os << '\t' << std::fixed << std::setprecision(3) << r.millis << std::defaultfloat << '\n';
        }
        return;
    }
    for (const auto& r : m.checks) {
        os << (r.pass ? "PASS " : "FAIL ") << r.id << " [" << r.label << "]";
        if (!r.params.empty()) os << " " << params_text(r.params);
        os << " (" << std::fixed << std::setprecision(1) << r.millis << std::defaultfloat << " ms)\n";
        if (r.first_mismatch)
            os << "  first mismatch at q^" << r.first_mismatch->exponent << ": lhs " << r.first_mismatch->lhs << ", rhs "
               << r.first_mismatch->rhs << "\n";
        if (!r.error.empty()) os << "  error: " << r.error << "\n";
    }
    std::size_t failed = 0;
    for (const auto& r : m.checks) failed += r.pass ? 0 : 1;
    os << (m.pass ? "PASS" : "FAIL") << ": " << m.checks.size() - failed << "/" << m.checks.size()
       << " checks passed at order " << m.order << "\n";
}

// Runs tasks on up to `jobs` threads; results keep task order.
std::vector<VerifyReport> run_tasks(const std::vector<Task>& tasks, unsigned jobs)
{
    std::vector<std::vector<VerifyReport>> results(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                results[i] = tasks[i]();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<VerifyReport> out;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!errors[i].empty()) {
            VerifyReport r;
            r.id = "task-" + std::to_string(i);
            r.label = r.id;
            r.pass = false;
            r.error = errors[i];
            out.push_back(std::move(r));
        }
        out.insert(out.end(), results[i].begin(), results[i].end());
    }
    return out;
}

struct Options {
    std::vector<std::string> ids;
    bool all = false;
    std::string family;
    std::string series;
    std::string side = "sum";
    std::size_t order = 200;
    std::string t_spec;
    std::vector<std::string> params;
    std::string format = "text";
    unsigned jobs = 1;
    std::string out;
    long t_cap = 12;
};

// Instances to run for a record given --t-spec/--param overrides.
std::vector<Bindings> instances_for(const Catalog& c, const IdentityRecord& r, const Options& o)
{
    if (o.t_spec.empty() && o.params.empty()) return r.instances.empty() ? std::vector<Bindings>{{}} : r.instances;
    Bindings b = r.instances.empty() ? Bindings{} : r.instances.front();
    auto has = [&](const std::string& n) {
        return std::any_of(r.params.begin(), r.params.end(), [&](const ParamSlot& s) { return s.name == n; });
    };
    if (!o.t_spec.empty()) {
        const std::string slot = has("t") ? "t" : has("z") ? "z" : "";
        if (slot.empty()) throw UsageError(r.id + " has no parameter t for --t-spec");
        b[slot] = Binding::parse(o.t_spec);
    }
    for (const auto& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects NAME=VALUE, got '" + p + "'");
        const std::string name = p.substr(0, eq);
        if (!has(name)) throw UsageError(r.id + " has no parameter '" + name + "'");
        b[name] = Binding::parse(p.substr(eq + 1));
    }
    try {
        c.validate(r, b);
    } catch (const EvalError& e) {
        throw UsageError(e.what());
    }
    return {b};
}

std::vector<const IdentityRecord*> selected(const Catalog& c, const Options& o)
{
    std::vector<const IdentityRecord*> recs;
    if (o.all) {
        for (const auto& r : c.records()) recs.push_back(&r);
        return recs;
    }
    for (const auto& id : o.ids) {
        const auto s = c.select(id);
        if (s.empty()) throw UnknownIdError(id);
        recs.insert(recs.end(), s.begin(), s.end());
    }
    return recs;
}

std::vector<Task> verify_tasks(const Catalog& c, const Options& o)
{
    std::vector<Task> tasks;
    if (!o.family.empty()) {
        if (o.family != "abc" && o.family != "def" && o.family != "gh")
            throw UsageError("unknown family '" + o.family + "' (expected abc, def or gh)");
        tasks.push_back([&c, f = o.family, n = o.order] { return check_functional_equations(c, f, n); });
    }
    VerifyOptions vo;
    vo.t_cap = o.t_cap;
    for (const auto* r : selected(c, o)) {
        for (const auto& b : instances_for(c, *r, o))
            tasks.push_back([&c, r, b, vo, n = o.order] { return std::vector<VerifyReport>{verify(c, *r, b, n, vo)}; });
    }
    if (tasks.empty()) throw UsageError("verify needs --id, --all or --family");
    return tasks;
}

std::vector<Task> replay_tasks(const Catalog& c, const Options& o)
{
    std::vector<const IdentityRecord*> recs;
    if (o.all || o.ids.empty()) {
        for (const auto& id : replay_ids()) recs.push_back(&c.get(id));
    } else {
        for (const auto* r : selected(c, o)) {
            if (!has_replay(r->id)) throw UsageError(r->id + " has no constant-term replay");
            recs.push_back(r);
        }
    }
    std::vector<Task> tasks;
    for (const auto* r : recs)
        for (const auto& b : instances_for(c, *r, o))
            tasks.push_back([&c, r, b, n = o.order, cap = o.t_cap] { return std::vector<VerifyReport>{replay(c, r->id, b, n, cap)}; });
    return tasks;
}

std::vector<Task> recursion_tasks(const Catalog& c, const Options& o)
{
    std::vector<std::string> fams;
    if (o.family.empty() || o.all) fams = {"abc", "def", "gh"};
    else if (o.family == "abc" || o.family == "def" || o.family == "gh") fams = {o.family};
    else throw UsageError("unknown family '" + o.family + "' (expected abc, def or gh)");
    std::vector<Task> tasks;
    for (const auto& f : fams) tasks.push_back([&c, f, n = o.order] { return check_recursion(c, f, n); });
    return tasks;
}

int emit(const RunManifest& m, const Options& o, std::ostream& out)
{
    if (o.out.empty()) {
        write_manifest(m, o.format, out);
    } else {
        std::ofstream f(o.out);
        if (!f) throw UsageError("cannot write '" + o.out + "'");
        write_manifest(m, o.format, f);
    }
    return m.pass ? 0 : 1;
}

int run_checks(const std::vector<Task>& tasks, const Options& o, std::ostream& out)
{
    RunManifest m;
    m.order = o.order;
    m.checks = run_tasks(tasks, o.jobs);
    for (const auto& r : m.checks) m.pass = m.pass && r.pass;
    return emit(m, o, out);
}

int cmd_coeffs(const Catalog& c, const Options& o, std::ostream& out)
{
    if (o.series.empty()) throw UsageError("coeffs needs --series");
    std::vector<std::string> values;
    const std::size_t N = o.order;
    if (o.side != "sum" && o.side != "prod") throw UsageError("--side must be sum or prod");
    const Side side = o.side == "sum" ? Side::Sum : Side::Product;
    bool done = false;
    for (const auto& cls : partition_classes()) {
        if (cls.label != o.series) continue;
        for (const auto& v : count_dp(cls, N)) values.push_back(v.get_str());
        done = true;
    }
    if (!done) {
        const IdentityRecord* r = c.find(o.series);
        if (!r) r = c.find_series(o.series);
        if (!r || !r->lhs_expr) throw UnknownIdError(o.series);
        Bindings b = instances_for(c, *r, o).front();
        c.validate(*r, b);
        IntSeries s = side == Side::Sum ? sum_side(c, r->id, b, N) : product_side(c, r->id, b, N);
        for (const auto& v : s.coeffs()) values.push_back(v.get_str());
    }
    std::ostringstream os;
    if (o.format == "json") {
        os << json{{"version", kVersion}, {"series", o.series}, {"order", N}, {"coefficients", values}}.dump(1) << "\n";
    } else if (o.format == "tsv") {
        os << "exponent\tcoefficient\n";
        for (std::size_t i = 0; i < values.size(); ++i) os << i << '\t' << values[i] << '\n';
    } else {
        for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
        os << "\n";
    }
    if (o.out.empty()) {
        out << os.str();
    } else {
        std::ofstream f(o.out);
        if (!f) throw UsageError("cannot write '" + o.out + "'");
        f << os.str();
    }
    return 0;
}

int cmd_catalog(const Catalog& c, const Options& o, std::ostream& out)
{
    std::vector<const IdentityRecord*> recs;
    if (o.ids.empty()) {
        for (const auto& r : c.records()) recs.push_back(&r);
    } else {
        recs = selected(c, o);
    }
    if (o.format == "json") {
        json arr = json::array();
        for (const auto* r : recs) {
            json params = json::array();
            for (const auto& p : r->params)
                params.push_back({{"name", p.name}, {"min_exp", p.min_exp}, {"allow_zero", p.allow_zero},
                                  {"allow_symbolic", p.allow_symbolic}, {"doc", p.doc}});
            arr.push_back({{"id", r->id}, {"paper_label", r->label}, {"group", r->group}, {"lhs", r->lhs},
                           {"rhs", r->rhs}, {"params", params}, {"instances", r->instances.size()}});
        }
        out << json{{"version", kVersion}, {"records", arr}}.dump(1) << "\n";
        return 0;
    }
    for (const auto* r : recs) {
        if (o.format == "tsv") {
            out << r->id << '\t' << r->label << '\t' << r->group << '\t' << r->lhs << '\t' << r->rhs << '\n';
            continue;
        }
        out << r->id << " [" << r->label << "] " << r->group << "\n  " << r->lhs << "\n  = " << r->rhs << "\n";
        for (const auto& p : r->params) out << "  param " << p.name << (p.doc.empty() ? "" : ": " + p.doc) << "\n";
        if (!r->note.empty()) out << "  note: " << r->note << "\n";
    }
    return 0;
}

}  // namespace

std::string manifest_to_json(const RunManifest& m)
{
    json checks = json::array();
    for (const auto& r : m.checks) checks.push_back(report_json(r));
    return json{{"version", m.version}, {"order", m.order}, {"checks", checks}, {"status", m.pass ? "PASS" : "FAIL"}}.dump(1);
}

RunManifest manifest_from_json(const std::string& text)
{
    const json j = json::parse(text);
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.order = j.at("order").get<std::size_t>();
    for (const auto& r : j.at("checks")) m.checks.push_back(report_from_json(r));
    m.pass = j.at("status").get<std::string>() == "PASS";
    return m;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact q-series identity verifier", "qsv"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", kVersion);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("--order", o.order, "truncation order N")->check(CLI::NonNegativeNumber);
        s->add_option("--format", o.format, "json, tsv or text")->check(CLI::IsMember({"json", "tsv", "text"}));
        s->add_option("--out", o.out, "write the report to this file");
    };
    auto selection = [&](CLI::App* s) {
        s->add_option("--id", o.ids, "record id, group or id prefix (repeatable)");
        s->add_flag("--all", o.all, "every record");
        s->add_option("--t-spec", o.t_spec, "value of t (or z): ±q^e, or t for the formal variable");
        s->add_option("--param", o.params, "NAME=VALUE parameter override (repeatable)");
        s->add_option("--t-cap", o.t_cap, "t-degree cap when t is formal")->check(CLI::Range(0L, 200L));
        s->add_option("--jobs", o.jobs, "parallel checks")->check(CLI::Range(1u, 256u));
    };
    auto* verify_cmd = app.add_subcommand("verify", "compare both sides of catalog identities");
    common(verify_cmd);
    selection(verify_cmd);
    verify_cmd->add_option("--family", o.family, "functional equations of a family: abc, def or gh");
    auto* coeffs_cmd = app.add_subcommand("coeffs", "print coefficients of a series");
    common(coeffs_cmd);
    coeffs_cmd->add_option("--series", o.series, "record id, series name or sequence label")->required();
    coeffs_cmd->add_option("--side", o.side, "sum or prod");
    coeffs_cmd->add_option("--t-spec", o.t_spec, "value of t (or z)");
    coeffs_cmd->add_option("--param", o.params, "NAME=VALUE parameter override");
    auto* rec_cmd = app.add_subcommand("recursion", "run the coefficient recursions");
    common(rec_cmd);
    rec_cmd->add_option("--family", o.family, "abc, def or gh (default: all)");
    rec_cmd->add_flag("--all", o.all, "all families");
    rec_cmd->add_option("--jobs", o.jobs, "parallel checks")->check(CLI::Range(1u, 256u));
    auto* replay_cmd = app.add_subcommand("replay", "re-derive transformations as constant terms");
    common(replay_cmd);
    selection(replay_cmd);
    auto* cat_cmd = app.add_subcommand("catalog", "list catalog records");
    cat_cmd->add_option("--id", o.ids, "record id, group or id prefix");
    cat_cmd->add_option("--format", o.format, "json, tsv or text")->check(CLI::IsMember({"json", "tsv", "text"}));

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }
    const Catalog& c = Catalog::builtin();
    try {
        if (*verify_cmd) return run_checks(verify_tasks(c, o), o, out);
        if (*replay_cmd) return run_checks(replay_tasks(c, o), o, out);
        if (*rec_cmd) return run_checks(recursion_tasks(c, o), o, out);
        if (*coeffs_cmd) return cmd_coeffs(c, o, out);
        if (*cat_cmd) return cmd_catalog(c, o, out);
    } catch (const UnknownIdError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace qsv
