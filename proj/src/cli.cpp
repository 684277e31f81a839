#include "progcover/cli.hpp"

#include "progcover/bounds.hpp"
#include "progcover/errors.hpp"
#include "progcover/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace progcover::cli {

namespace {

const std::map<std::string, Subcommand> kSubcommands{
    {"cover-ap", Subcommand::cover_ap},   {"cover-gp", Subcommand::cover_gp},
    {"intersect", Subcommand::intersect}, {"lemma1", Subcommand::lemma1},
    {"thm2-cover", Subcommand::thm2_cover}, {"dj-check", Subcommand::dj_check},
    {"audit-g", Subcommand::audit_g},     {"audit-a", Subcommand::audit_a},
    {"density", Subcommand::density},     {"filter", Subcommand::filter},
    {"scan-squarefree", Subcommand::scan_squarefree},
};

// A report: a JSON document plus the same data as a flat table for csv/text.
struct Report {
    Json doc;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool violation = false;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render(const Report& report, Format format, std::ostream& out) {
    switch (format) {
    case Format::json:
        out << report.doc.dump(2) << '\n';
        return;
    case Format::csv:
        for (std::size_t i = 0; i < report.header.size(); ++i) out << (i ? "," : "") << csv_field(report.header[i]);
        out << '\n';
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
            out << '\n';
        }
        return;
    case Format::text: {
        for (const auto& [key, value] : report.doc.items()) {
            if (value.is_primitive()) out << key << ": " << scalar_text(value) << '\n';
        }
        if (report.header.empty()) return;
        std::vector<std::size_t> width(report.header.size());
        for (std::size_t i = 0; i < width.size(); ++i) width[i] = report.header[i].size();
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string text;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string cell = cells[i];
                if (i + 1 < cells.size()) cell.resize(width[i] + 2, ' ');
                text += cell;
            }
            out << text << '\n';
        };
        out << '\n';
        line(report.header);
        for (const auto& row : report.rows) line(row);
        return;
    }
    }
}

Json load_input(const CommandConfig& config, bool required) {
    if (!config.input_path) {
        if (required) throw usage_error("this subcommand needs --input FILE");
        return Json::object();
    }
    std::ifstream in(*config.input_path);
    if (!in) {
        throw usage_error("cannot open input file " + *config.input_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), *config.input_path);
}

const Json& member(const Json& doc, const char* key) {
    if (!doc.is_object()) throw schema_error("", "expected an object");
    const auto it = doc.find(key);
    if (it == doc.end()) throw schema_error("", std::string("missing key \"") + key + "\"");
    return *it;
}

RootDescriptor input_descriptor(const Json& doc) {
    if (!doc.contains("descriptor")) return RootDescriptor::rationals();
    return descriptor_from_json(doc.at("descriptor"));
}

std::string describe(const Witness& w) {
    if (const auto* ap = std::get_if<ArithmeticProgression>(&w)) {
        return "A(" + to_string(ap->start()) + ", " + to_string(ap->step()) + ")";
    }
    const auto& gp = std::get<GeometricProgression>(w);
    return "G(" + to_string(gp.start()) + ", " + to_string(gp.ratio()) + ")";
}

template <typename T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
    return out.str();
}

// mt19937_64 is fully specified; reduce by modulo so streams match everywhere.
class SeededDraws {
public:
    explicit SeededDraws(std::uint64_t seed) : engine_(seed) {}
    long between(long lo, long hi) {
        return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rational fraction(long num_lo, long num_hi, long den_hi) {
        Rational out(between(num_lo, num_hi), between(1, den_hi));
        out.canonicalize();
        return out;
    }

private:
    std::mt19937_64 engine_;
};

Rational text_rational(const std::optional<std::string>& flag, const Json& doc, const char* key) {
    if (flag) return parse_rational(*flag);
    if (doc.contains(key)) return rational_from_json(doc.at(key), std::string("/") + key);
    throw usage_error(std::string("missing parameter ") + key + " (flag --" + key + " or input key)");
}

std::uint64_t nonnegative_integer(const Rational& x, const char* name) {
    if (!is_integer(x) || sgn(x) < 0 || !x.get_num().fits_ulong_p()) {
        throw usage_error(std::string(name) + " must be a nonnegative 64-bit integer");
    }
    return x.get_num().get_ui();
}

// ---------------------------------------------------------------- commands

Report cover_command(const CommandConfig& config, CoverMode mode) {
    const Json doc = load_input(config, true);
    const CoverInstance instance = instance_from_json(doc);
    if (instance.mode() != mode) {
        throw usage_error(std::string("instance mode \"") + to_string(instance.mode()) + "\" does not match the subcommand");
    }
    const CoverSolution sol = mode == CoverMode::ap ? min_ap_cover(instance) : min_gp_cover(instance);
    Report r;
    r.doc = Json{{"mode", to_string(mode)}, {"descriptor", to_json(instance.descriptor())}, {"size", instance.size()}};
    r.doc.update(to_json(sol));
    r.header = {"block", "members", "witness"};
    for (std::size_t i = 0; i < sol.blocks.size(); ++i) {
        r.rows.push_back({std::to_string(i), join(sol.blocks[i].members), describe(sol.blocks[i].witness)});
    }
    return r;
}

Report intersect_command(const CommandConfig& config) {
    const Json doc = load_input(config, true);
    const RootDescriptor d = input_descriptor(doc);
    const auto ap = ap_from_json(member(doc, "ap"), d);
    const auto gp = gp_from_json(member(doc, "gp"), d);
    const auto points = intersect_prefix(ap, gp, config.prefix);
    Report r;
    Json pts = Json::array();
    for (const auto& p : points) pts.push_back(to_json(p));
    r.doc = Json{{"N", config.prefix}, {"count", points.size()}, {"points", std::move(pts)}};
    r.header = {"k", "h", "value"};
    for (const auto& p : points) r.rows.push_back({std::to_string(p.k), to_string(p.h), to_string(p.value)});
    return r;
}

Report lemma1_command(const CommandConfig& config) {
    const Json doc = load_input(config, true);
    const RootDescriptor d = input_descriptor(doc);
    const auto report = lemma1_analyze(ap_from_json(member(doc, "ap"), d), gp_from_json(member(doc, "gp"), d), config.prefix);
    Report r;
    r.doc = Json{{"N", config.prefix}};
    r.doc.update(to_json(report));
    r.violation = report.status == Lemma1Status::ok && !report.residues_ok;
    r.header = {"k", "h", "k_mod_m", "value"};
    for (const auto& p : report.points) {
        r.rows.push_back({std::to_string(p.k), to_string(p.h), std::to_string(p.k % d.m()), to_string(p.value)});
    }
    return r;
}

Report thm2_command(const CommandConfig& config) {
    const Json doc = load_input(config, true);
    const RootDescriptor d = input_descriptor(doc);
    const auto cover = theorem2_cover(gp_from_json(member(doc, "gp"), d), config.n);
    Report r;
    r.doc = Json{{"n", config.n}, {"verified", true}};
    r.doc.update(to_json(cover));
    r.header = {"k", "progression", "h"};
    for (const auto& t : cover.terms) r.rows.push_back({std::to_string(t.k), std::to_string(t.residue), to_string(t.h)});
    return r;
}

Report dj_command(const CommandConfig& config) {
    const Json doc = load_input(config, true);
    const RootDescriptor d = input_descriptor(doc);
    const auto gp = gp_from_json(member(doc, "gp"), d);
    std::vector<ArithmeticProgression> aps;
    const bool sampled = !doc.contains("ap");
    if (sampled) {
        SeededDraws draws(config.seed);
        const unsigned long samples = config.samples ? config.samples : 200;
        const RootDescriptor q = RootDescriptor::rationals();
        for (unsigned long i = 0; i < samples; ++i) {
            const Rational v = draws.fraction(0, 50, 10);
            const Rational step = draws.fraction(1, 50, 10);
            aps.emplace_back(FieldElement::from_rational(q, v), FieldElement::from_rational(q, step));
        }
    } else {
        aps.push_back(ap_from_json(member(doc, "ap"), d));
    }
    Report r;
    r.header = {"sample", "v", "d", "count", "ok"};
    std::size_t worst = 0;
    bool all_ok = true;
    Json checks = Json::array();
    for (std::size_t i = 0; i < aps.size(); ++i) {
        const auto check = assert_dj_bound(aps[i], gp, config.prefix);
        worst = std::max(worst, check.count);
        all_ok = all_ok && check.ok;
        checks.push_back(Json{{"ap", to_json(aps[i])}, {"count", check.count}, {"ok", check.ok}});
        r.rows.push_back({std::to_string(i), to_string(aps[i].start()), to_string(aps[i].step()),
                          std::to_string(check.count), check.ok ? "true" : "false"});
    }
    r.doc = Json{{"N", config.prefix}, {"bound", kIntersectionBound}, {"sampled", sampled}};
    if (sampled) r.doc["seed"] = config.seed;
    r.doc["max_count"] = worst;
    r.doc["ok"] = all_ok;
    r.doc["checks"] = std::move(checks);
    r.violation = !all_ok;
    return r;
}

Report audit_table(const BoundReport& report, bool timings) {
    Report r;
    r.doc = to_json(report, timings);
    r.header = {"n", "size", "measured", "lower", "upper", "pair_bound", "holds"};
    if (timings) r.header.push_back("runtime_ms");
    for (const auto& row : report.rows) {
        std::vector<std::string> cells{std::to_string(row.n),
                                       std::to_string(row.size),
                                       std::to_string(row.measured),
                                       row.lower.value_or(""),
                                       row.upper ? std::to_string(*row.upper) : "",
                                       std::to_string(row.pair_bound),
                                       row.holds ? "true" : "false"};
        if (timings) cells.push_back(std::to_string(row.runtime_ms));
        r.rows.push_back(std::move(cells));
    }
    r.violation = !report.all_hold();
    return r;
}

Report density_command(const CommandConfig& config) {
    const Json doc = load_input(config, false);
    const auto a = nonnegative_integer(text_rational(config.a, doc, "a"), "a");
    const auto b = nonnegative_integer(text_rational(config.b, doc, "b"), "b");
    const auto report = squarefree_density(a, b, config.x);
    Report r;
    r.doc = to_json(report);
    r.header = {"a", "b", "x", "count", "ratio", "predicted", "abs_error"};
    r.rows.push_back({std::to_string(a), std::to_string(b), std::to_string(config.x), std::to_string(report.count),
                      report.ratio, report.predicted, report.abs_error});
    return r;
}

Report filter_command(const CommandConfig& config) {
    const Json doc = load_input(config, true);
    const RootDescriptor d = input_descriptor(doc);
    const auto result = squarefree_filter(ap_from_json(member(doc, "ap"), d), config.n);
    Report r;
    r.doc = to_json(result);
    r.header = {"h", "value"};
    for (std::size_t i = 0; i < result.indices.size(); ++i) {
        r.rows.push_back({to_string(result.indices[i]), to_string(result.elements[i])});
    }
    return r;
}

Report scan_command(const CommandConfig& config) {
    const Json doc = load_input(config, false);
    struct Case {
        Rational s, r;
        Integer b;
    };
    std::vector<Case> cases;
    const bool sampled = !config.s && !doc.contains("s");
    if (sampled) {
        SeededDraws draws(config.seed);
        const unsigned long samples = config.samples ? config.samples : 1000;
        while (cases.size() < samples) {
            Rational s = draws.fraction(1, 50, 50);
            Rational ratio = draws.fraction(1, 50, 50);
            const long b = draws.between(1, 50);
            if (ratio <= 1) continue;
            cases.push_back({s, ratio, Integer(b)});
        }
    } else {
        const Rational b = text_rational(config.b, doc, "b");
        if (!is_integer(b)) throw usage_error("b must be an integer");
        cases.push_back({text_rational(config.s, doc, "s"), text_rational(config.r, doc, "r"), b.get_num()});
    }
    Report r;
    r.header = {"s", "r", "b", "hits"};
    Json results = Json::array();
    std::size_t most = 0;
    for (const auto& c : cases) {
        const auto hits = squarefree_exponent_scan(c.s, c.r, c.b, config.j_max);
        most = std::max(most, hits.size());
        results.push_back(Json{{"s", to_string(c.s)}, {"r", to_string(c.r)}, {"b", to_string(c.b)}, {"j", hits}});
        r.rows.push_back({to_string(c.s), to_string(c.r), to_string(c.b), join(hits)});
    }
    r.doc = Json{{"j_max", config.j_max}, {"sampled", sampled}};
    if (sampled) r.doc["seed"] = config.seed;
    r.doc["cases"] = cases.size();
    r.doc["max_hits"] = most;
    r.doc["results"] = std::move(results);
    return r;
}

Report dispatch(const CommandConfig& config) {
    switch (config.subcommand) {
    case Subcommand::cover_ap: return cover_command(config, CoverMode::ap);
    case Subcommand::cover_gp: return cover_command(config, CoverMode::gp);
    case Subcommand::intersect: return intersect_command(config);
    case Subcommand::lemma1: return lemma1_command(config);
    case Subcommand::thm2_cover: return thm2_command(config);
    case Subcommand::dj_check: return dj_command(config);
    case Subcommand::audit_g: {
        const Json doc = load_input(config, true);
        const RootDescriptor d = input_descriptor(doc);
        return audit_table(g_lower_bound_audit(ap_from_json(member(doc, "ap"), d), config.n_max), config.timings);
    }
    case Subcommand::audit_a: {
        const Json doc = load_input(config, true);
        const RootDescriptor d = input_descriptor(doc);
        return audit_table(a_bound_audit(gp_from_json(member(doc, "gp"), d), config.n_max), config.timings);
    }
    case Subcommand::density: return density_command(config);
    case Subcommand::filter: return filter_command(config);
    case Subcommand::scan_squarefree: return scan_command(config);
    }
    throw usage_error("unknown subcommand");
}

} // namespace

ParseOutcome parse_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact covers of finite sets by arithmetic and geometric progressions"};
    std::string command;
    std::string format = "json";
    CommandConfig config;
    std::string input;

    std::vector<std::string> names;
    for (const auto& [name, sub] : kSubcommands) names.push_back(name);
    app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(names));
    app.add_option("--input", input, "JSON input file");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", config.seed, "Seed for sampled runs");
    app.add_option("--n-max", config.n_max, "Largest prefix length in audits");
    app.add_option("--N", config.prefix, "GP prefix length for intersect, lemma1, dj-check");
    app.add_option("--n", config.n, "Number of terms for thm2-cover and filter");
    app.add_option("--x", config.x, "Range for density");
    app.add_option("--j-max", config.j_max, "Largest exponent for scan-squarefree");
    app.add_option("--samples", config.samples, "Sample count for sampled dj-check / scan-squarefree");
    app.add_option("--a", config.a, "a for density");
    app.add_option("--b", config.b, "b for density or scan-squarefree");
    app.add_option("--s", config.s, "s for scan-squarefree");
    app.add_option("--r", config.r, "r for scan-squarefree");
    app.add_flag("--timings", config.timings, "Include per-row runtimes in audit output");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return {std::nullopt, kExitOk};
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return {std::nullopt, kExitUsage};
    }
    config.subcommand = kSubcommands.at(command);
    if (!input.empty()) config.input_path = input;
    config.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    return {config, kExitOk};
}

int exit_status_for(std::exception_ptr error, std::ostream& err) {
    try {
        std::rethrow_exception(error);
    } catch (const invariant_violation& e) {
        err << "violation: " << e.what() << '\n';
        return kExitViolation;
    } catch (const Json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (...) {
        err << "error: unknown failure\n";
        return kExitUsage;
    }
}

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Report report = dispatch(config);
        render(report, config.format, out);
        if (report.violation) {
            err << "violation: a checked bound does not hold\n";
            return kExitViolation;
        }
        return kExitOk;
    } catch (...) {
        return exit_status_for(std::current_exception(), err);
    }
}

} // namespace progcover::cli
