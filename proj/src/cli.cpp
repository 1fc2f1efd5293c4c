#include "qstab/cli.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "qstab/catalog.hpp"
#include "qstab/json_io.hpp"
#include "qstab/svg.hpp"

namespace qstab {

namespace {

struct Request {
    std::string command;
    std::string algebra;
    std::string bound_str;
    int field = 0;
    std::string stability;
    std::string path_file;
    std::string theta_str;
    std::string module_name;
    std::string phase_str;
    std::string format = "json";
    std::string out_file;
    long long seed = 0;
};

std::string read_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open file '" + file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

DimVec parse_dims_arg(const std::string& s) {
    DimVec out;
    for (const auto& item : split_commas(s)) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("expected a comma separated list of nonnegative integers, got '" +
                             s + "'");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw ParseError("empty dimension list");
    return out;
}

std::vector<Rat> parse_rats_arg(const std::string& s) {
    std::vector<Rat> out;
    for (const auto& item : split_commas(s)) out.push_back(rat_from_string(item));
    if (out.empty()) throw ParseError("empty rational list");
    return out;
}

std::shared_ptr<const AlgebraSpec> load_algebra(const Request& req) {
    if (req.algebra.rfind("builtin:", 0) == 0)
        return builtin_algebra(req.algebra.substr(8), req.field ? req.field : 2);
    if (req.field != 0)
        throw ValidationError("--field applies to builtin algebras only");
    return std::make_shared<const AlgebraSpec>(parse_algebra(read_file(req.algebra)));
}

RedPath load_path(const Request& req) {
    if (req.path_file.empty()) throw ParseError("--path <file> is required here");
    return parse_red_path(read_file(req.path_file));
}

// --stability "slope num=1,0 den=0,1" | "charge a=1,0 b=1,1" |
// "table <file>" | "path <file>"; --path f shorthand for "path f".
StabilityFunction make_stability(const Request& req,
                                 const std::shared_ptr<const ModuleUniverse>& U) {
    std::string desc = req.stability;
    if (desc.empty() && !req.path_file.empty()) desc = "path " + req.path_file;
    if (desc.empty())
        throw ParseError("a stability function is required; pass --stability or --path");

    std::vector<std::string> tokens;
    std::stringstream ss(desc);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty()) throw ParseError("empty --stability value");

    auto keyed = [&](const std::string& key) -> std::string {
        for (std::size_t i = 1; i < tokens.size(); ++i)
            if (tokens[i].rfind(key + "=", 0) == 0) return tokens[i].substr(key.size() + 1);
        throw ParseError("--stability " + tokens[0] + " needs " + key + "=...");
    };

    const std::string& kind = tokens[0];
    if (kind == "slope")
        return StabilityFunction::slope(parse_rats_arg(keyed("num")), parse_rats_arg(keyed("den")));
    if (kind == "charge")
        return StabilityFunction::linear_charge(parse_rats_arg(keyed("a")),
                                                parse_rats_arg(keyed("b")));
    if (kind == "path") {
        if (tokens.size() != 2) throw ParseError("--stability path needs a file name");
        return StabilityFunction::path_induced(U, parse_red_path(read_file(tokens[1])));
    }
    if (kind == "table") {
        if (tokens.size() != 2) throw ParseError("--stability table needs a file name");
        std::map<int, PhaseValue> phases;
        std::istringstream file(read_file(tokens[1]));
        std::string line;
        int lineno = 0;
        while (std::getline(file, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::stringstream ls(line);
            std::string name, phase, extra;
            if (!(ls >> name)) continue;
            if (!(ls >> phase) || (ls >> extra))
                throw ParseError("table line " + std::to_string(lineno) +
                                 ": expected 'class phase'");
            int id = U->class_by_name(name);
            if (id < 0)
                throw ValidationError("table line " + std::to_string(lineno) +
                                      ": unknown class '" + name + "'");
            phases[id] = parse_phase(phase);
        }
        return StabilityFunction::table(U, std::move(phases));
    }
    throw ParseError("unknown stability kind '" + kind + "'");
}

Json envelope(const Request& req, const AlgebraSpec& alg, const DimVec& bound) {
    Json j;
    j["command"] = req.command;
    j["algebra"] = alg.builtin_id.empty() ? req.algebra : "builtin:" + alg.builtin_id;
    j["field"] = static_cast<int>(alg.p);
    j["bound"] = json_dims(bound);
    j["seed"] = req.seed;
    return j;
}

const char* verdict_name(KingVerdict v) {
    switch (v) {
        case KingVerdict::Stable: return "stable";
        case KingVerdict::Semistable: return "semistable";
        default: return "not_semistable";
    }
}

int class_id_or_throw(const ModuleUniverse& U, const std::string& name) {
    int id = U.class_by_name(name);
    if (id < 0) throw ValidationError("unknown class '" + name + "'");
    return id;
}

void emit(const Request& req, std::ostream& out, const std::string& text) {
    if (req.out_file.empty()) {
        out << text;
        return;
    }
    std::ofstream f(req.out_file);
    if (!f) throw ValidationError("cannot write to '" + req.out_file + "'");
    f << text;
}

int dispatch(const Request& req, std::ostream& out) {
    auto alg = load_algebra(req);
    DimVec bound = req.bound_str.empty() ? DimVec(alg->vertex_count, 1)
                                         : parse_dims_arg(req.bound_str);
    auto U = ModuleUniverse::build(alg, bound);
    Json j = envelope(req, *alg, bound);

    if (req.format == "svg" && req.command != "render")
        throw ParseError("--format svg is only available for render");

    if (req.command == "indec") {
        Json arr = Json::array();
        for (int id : U->indec_ids()) {
            Json jc;
            jc["name"] = U->cls(id).name;
            jc["dims"] = json_dims(U->cls(id).dims);
            arr.push_back(jc);
        }
        j["count"] = static_cast<int>(U->indec_ids().size());
        j["exact_window"] = U->exact();
        j["classes"] = arr;
    } else if (req.command == "king") {
        if (req.theta_str.empty()) throw ParseError("--theta is required for king");
        auto theta = parse_rats_arg(req.theta_str);
        std::vector<int> ids;
        if (!req.module_name.empty())
            ids.push_back(class_id_or_throw(*U, req.module_name));
        else
            for (int id = 0; id < U->class_count(); ++id) ids.push_back(id);
        Json verdicts = Json::object();
        for (int id : ids)
            verdicts[U->cls(id).name] =
                verdict_name(king_semistable(theta, U->cls(id).rep, U->limits()));
        j["theta"] = json_rats(theta);
        j["verdicts"] = verdicts;
    } else if (req.command == "hn") {
        if (req.module_name.empty()) throw ParseError("--module is required for hn");
        auto sf = make_stability(req, U);
        int id = class_id_or_throw(*U, req.module_name);
        auto hn = hn_filtration(sf, U->cls(id).rep, U->limits());
        Json steps = Json::array(), factors = Json::array(), phases = Json::array();
        for (const auto& step : hn.steps) steps.push_back(json_dims(step.sub_dims()));
        for (std::size_t i = 0; i < hn.factors.size(); ++i) {
            Json jf;
            jf["class"] = U->cls(U->classify(hn.factors[i])).name;
            jf["dims"] = json_dims(hn.factors[i].dims());
            jf["phase"] = json_phase(hn.phases[i]);
            factors.push_back(jf);
        }
        for (const auto& p : hn.phases) phases.push_back(json_phase(p));
        j["module"] = U->cls(id).name;
        j["steps"] = steps;
        j["factors"] = factors;
        j["phases"] = phases;
    } else if (req.command == "torsion") {
        if (req.phase_str.empty()) throw ParseError("--phase is required for torsion");
        auto sf = make_stability(req, U);
        PhaseValue p = parse_phase(req.phase_str);
        ModuleSet T = torsion_class_at(sf, *U, p);
        ModuleSet F = torsion_free_at(sf, *U, p);
        std::string why;
        bool pair_ok = verify_torsion_pair(*U, T, F, &why);
        j["phase"] = json_phase(p);
        j["torsion"] = json_module_set(*U, T);
        j["free"] = json_module_set(*U, F);
        j["torsion_pair"] = pair_ok;
        if (!pair_ok) j["torsion_pair_note"] = why;
        j["window_relative"] = !U->exact();
    } else if (req.command == "chain" || req.command == "mgs") {
        auto sf = make_stability(req, U);
        MGSReport report = verify_mgs(sf, *U);
        j.update(json_mgs(*U, report));
        j["window_relative"] = !U->exact();
    } else if (req.command == "walls") {
        j.update(json_walls(*U, enumerate_walls(*U)));
    } else if (req.command == "chambers") {
        j.update(json_chambers(chambers_rank2(*U)));
    } else if (req.command == "path") {
        RedPath path = load_path(req);
        j.update(json_path_report(*U, validate_red_path(*U, path)));
    } else if (req.command == "render") {
        RedPath path;
        bool has_path = !req.path_file.empty();
        if (has_path) path = load_path(req);
        emit(req, out, render_svg(*U, has_path ? &path : nullptr));
        return 0;
    } else {
        throw ParseError("unknown command '" + req.command + "'");
    }

    emit(req, out, dump_json(j));
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Request req;
    CLI::App app{"Exact stability data and wall geometry for small quiver algebras"};
    app.name("qstab");
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* s) {
        s->add_option("--algebra", req.algebra, "builtin:<id> or an algebra file")->required();
        s->add_option("--bound", req.bound_str, "dimension bound d1,d2,... (default all ones)");
        s->add_option("--field", req.field, "field size for builtin algebras");
        s->add_option("--stability", req.stability,
                      "slope num=.. den=.. | charge a=.. b=.. | table <file> | path <file>");
        s->add_option("--path", req.path_file, "red path file");
        s->add_option("--theta", req.theta_str, "stability vector t1,t2,...");
        s->add_option("--module", req.module_name, "class name");
        s->add_option("--phase", req.phase_str, "phase, e.g. 3/4 or 1*-1 or inf");
        s->add_option("--format", req.format, "json or svg")
            ->check(CLI::IsMember({"json", "svg"}));
        s->add_option("--out", req.out_file, "output file (default stdout)");
        s->add_option("--seed", req.seed, "seed echoed into reports");
    };
    add_common(app.add_subcommand("indec", "list indecomposable classes in the bound"));
    add_common(app.add_subcommand("king", "theta semistability verdicts"));
    add_common(app.add_subcommand("hn", "Harder-Narasimhan filtration of a class"));
    add_common(app.add_subcommand("torsion", "torsion pair at a phase"));
    add_common(app.add_subcommand("chain", "chain of torsion classes"));
    add_common(app.add_subcommand("mgs", "maximal green sequence verdict"));
    add_common(app.add_subcommand("walls", "stability space walls"));
    add_common(app.add_subcommand("chambers", "chambers of the rank 2 fan"));
    add_common(app.add_subcommand("path", "validate a red path"));
    add_common(app.add_subcommand("render", "SVG picture of walls, chambers, and a path"));

    std::vector<std::string> full;
    full.push_back("qstab");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        Json j;
        Json inner;
        inner["kind"] = "UsageError";
        inner["message"] = e.what();
        j["error"] = inner;
        out << dump_json(j);
        return 2;
    }
    req.command = app.get_subcommands().front()->get_name();

    try {
        return dispatch(req, out);
    } catch (const ParseError& e) {
        out << dump_json(json_error(e));
        return 2;
    } catch (const Error& e) {
        out << dump_json(json_error(e));
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qstab
