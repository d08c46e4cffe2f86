#include "hahn/cli.hpp"

#include "hahn/cmap.hpp"
#include "hahn/dhensel.hpp"
#include "hahn/error.hpp"
#include "hahn/examples.hpp"
#include "hahn/parser.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hahn::cli {

using json = nlohmann::json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::LinearSurjectivityFailure:
    case ErrorKind::NoRootInResidue:
    case ErrorKind::NotConstant: return kUnsolvable;
    case ErrorKind::NeedsPrecision:
    case ErrorKind::IterationLimit: return kUnknown;
    case ErrorKind::Unsupported:
    case ErrorKind::SizeLimit: return kUnsupported;
    default: return kInputError;
    }
}

std::optional<std::string> process_env(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (!v)
        return std::nullopt;
    return std::string(v);
}

FieldSpec SessionConfig::to_spec() const {
    ValueGroup g = ValueGroup::parse(group);
    AdditiveMap c = parse_cmap(g, field, cmap);
    std::optional<GroupElement> tau;
    if (truncation) {
        try {
            tau = GroupElement::parse(g, *truncation);
        } catch (const Error& e) {
            fail(ErrorKind::Config, "bad truncation '" + *truncation + "' for " + g.to_string() + ": " + e.what());
        }
    }
    return FieldSpec(field, g, c, tau);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

Format parse_format(const std::string& s) {
    if (s == "json")
        return Format::Json;
    if (s == "text")
        return Format::Text;
    fail(ErrorKind::Config, "unknown format '" + s + "' (expected json or text)");
}

}  // namespace

void apply_config_text(SessionConfig& config, const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        if (trim(body).empty())
            continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError(ErrorKind::Config, source + ": expected 'key = value'",
                             SourcePos{lineno, static_cast<int>(body.find_first_not_of(" \t")) + 1}, {"'='"});
        std::string key = trim(body.substr(0, eq)), value = trim(body.substr(eq + 1));
        SourcePos at{lineno, static_cast<int>(eq) + 2};
        try {
            if (key == "field")
                config.field = parse_field(value);
            else if (key == "group")
                config.group = value;
            else if (key == "cmap")
                config.cmap = value;
            else if (key == "trunc")
                config.truncation = value;
            else if (key == "format")
                config.format = parse_format(value);
            else
                throw ParseError(ErrorKind::Config, source + ": unknown key '" + key + "'",
                                 SourcePos{lineno, static_cast<int>(body.find(key)) + 1},
                                 {"field", "group", "cmap", "trunc", "format"});
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(ErrorKind::Config, source + ": " + e.what(), at);
        }
    }
}

namespace {

struct Outcome {
    int code = kOk;
    json result = json::object();
    std::string text;
};


json series_json(const HahnSeries& s) {
    json j;
    j["result"] = s.to_string();
    j["exact"] = s.is_exact();
    j["truncation"] = s.truncation() ? json(s.truncation()->to_string()) : json(nullptr);
    return j;
}

Outcome series_outcome(const HahnSeries& s) { return {kOk, series_json(s), s.to_string()}; }

const char* valuation_kind(Valuation::Kind k) {
    switch (k) {
    case Valuation::Kind::Finite: return "finite";
    case Valuation::Kind::PlusInfinity: return "plus_infinity";
    case Valuation::Kind::AboveTruncation: return "above_truncation";
    }
    return "";
}

json strings(const std::vector<GroupElement>& v) {
    json a = json::array();
    for (const auto& g : v)
        a.push_back(g.to_string());
    return a;
}

GroupElement bound_or_precision(const FieldSpec& spec, const std::optional<std::string>& text) {
    if (!text)
        return spec.precision();
    try {
        return GroupElement::parse(spec.group, *text);
    } catch (const Error& e) {
        fail(ErrorKind::Parse, "bad bound '" + *text + "': " + e.what());
    }
}

LinearDiffOperator operator_from(const DifferentialPolynomial& p) {
    std::vector<RatFunc> coeffs;
    for (const auto& [m, c] : p.terms()) {
        bool constant_coeff = c.is_exact() && c.terms().size() == 1 && c.leading().exp.is_zero();
        if (total_degree(m) != 1 || !constant_coeff)
            fail(ErrorKind::InvalidArgument,
                 "operator must be linear and homogeneous in Y with coefficients in k, got " + p.to_string());
        std::size_t i = m.size() - 1;
        if (coeffs.size() <= i)
            coeffs.resize(i + 1);
        coeffs[i] = c.leading().coeff;
    }
    return LinearDiffOperator(coeffs);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

Outcome do_solve_linear(const FieldSpec& spec, const std::string& op_text, const std::string& rhs_text) {
    LinearDiffOperator op = operator_from(parse_differential(spec, op_text));
    RatFunc rhs = parse_coeff(spec.field, rhs_text);
    LinearSolution sol = solve_linear(spec.field, op, rhs);
    Outcome o;
    o.result["operator"] = op.to_string();
    o.result["rhs"] = rhs.to_string();
    o.result["particular"] = sol.particular ? json(sol.particular->to_string()) : json(nullptr);
    std::vector<std::string> kernel;
    for (const auto& k : sol.kernel)
        kernel.push_back(k.to_string());
    o.result["kernel"] = kernel;
    o.code = sol.particular ? kOk : kUnsolvable;
    o.text = (sol.particular ? "particular: " + sol.particular->to_string() : "no solution in k") +
             "\nkernel: [" + join(kernel, ", ") + "]";
    return o;
}

Outcome do_solve_dagger(const FieldSpec& spec, const std::string& u_text, long k_bound) {
    RatFunc u = parse_coeff(spec.field, u_text);
    DaggerSolution s = solve_dagger(spec, u, k_bound);
    Outcome o;
    o.result["u"] = u.to_string();
    o.result["checked"] = s.checked;
    switch (s.status) {
    case DaggerSolution::Status::Solution:
        o.result["status"] = "Solution";
        o.result["a"] = s.a->to_string();
        o.result["m"] = s.m.to_string();
        o.result["d"] = s.d.to_string();
        o.text = "a = " + s.a->to_string();
        break;
    case DaggerSolution::Status::Unsat:
        o.code = kUnsolvable;
        o.result["status"] = "Unsat";
        o.result["reason"] = dagger_reason_name(s.reason);
        o.result["certificate"] = s.certificate;
        o.text = "unsat: " + s.certificate;
        break;
    case DaggerSolution::Status::Unknown:
        o.code = kUnknown;
        o.result["status"] = "Unknown";
        o.result["certificate"] = s.certificate;
        o.text = "unknown: " + s.certificate;
        break;
    }
    return o;
}

Outcome do_lift(const FieldSpec& spec, const std::string& p_text, const std::optional<std::string>& bound_text,
                std::optional<long> max_iterations) {
    DifferentialPolynomial p = parse_differential(spec, p_text);
    GroupElement bound = bound_or_precision(spec, bound_text);
    LiftResult r = dhensel_lift(spec, p, bound, max_iterations);
    Outcome o;
    o.result["polynomial"] = p.to_string();
    o.result["bound"] = bound.to_string();
    o.result["y"] = r.y.to_string();
    o.result["exact_zero"] = r.exact_zero;
    o.result["residual"] = r.residual.to_string();
    json trace = json::array();
    std::string text = r.y.to_string();
    for (const auto& step : r.trace) {
        json s;
        s["gamma"] = step.gamma.to_string();
        s["operator"] = step.op.to_string();
        s["rhs"] = step.rhs.to_string();
        s["correction"] = step.correction.to_string();
        s["residual"] = step.residual.to_string();
        trace.push_back(s);
        text += "\n# gamma " + step.gamma.to_string() + ": (" + step.op.to_string() + ")(u) = " +
                step.rhs.to_string() + ", u = " + step.correction.to_string() + ", v(P(y)) " +
                (step.residual.kind == Valuation::Kind::AboveTruncation ? "" : "= ") + step.residual.to_string();
    }
    o.result["trace"] = trace;
    o.text = text;
    return o;
}

Outcome do_classify(const FieldSpec& spec) {
    ConstantsClassification cl = classify_constants(spec.cmap);
    Outcome o;
    o.result["verdict"] = verdict_name(cl.verdict);
    o.result["delta"] = strings(cl.delta.basis());
    o.result["kernel"] = strings(cl.kernel.basis());
    o.result["injective"] = cl.injective;
    o.result["image_meets_dagger"] = cl.meet.meets;
    if (cl.meet.meets) {
        json w;
        w["gamma"] = cl.meet.gamma->to_string();
        w["f"] = cl.meet.f->to_string();
        o.result["meet_witness"] = w;
    } else {
        o.result["meet_witness"] = nullptr;
    }
    json ws = json::array();
    std::vector<std::string> wtext;
    for (const auto& w : cl.witnesses) {
        HahnSeries m = HahnSeries::monomial(spec.group, w.coeff, w.gamma);
        json j;
        j["gamma"] = w.gamma.to_string();
        j["coeff"] = w.coeff.to_string();
        j["constant"] = m.to_string();
        ws.push_back(j);
        wtext.push_back(m.to_string());
    }
    o.result["constant_witnesses"] = ws;
    o.text = std::string("verdict: ") + verdict_name(cl.verdict) + "\nDelta_C: " + cl.delta.to_string() +
             "\nker(c): " + cl.kernel.to_string() + "\ninjective: " + (cl.injective ? "true" : "false") +
             "\nimage meets dagger: " + (cl.meet.meets ? "true" : "false") +
             (wtext.empty() ? "" : "\nconstants: " + join(wtext, ", "));
    return o;
}

Outcome do_purity(const FieldSpec& spec, const std::string& a_text, const std::string& b_text, unsigned long n,
                  const std::optional<std::string>& bound_text) {
    HahnSeries a = parse_series(spec, a_text), b = parse_series(spec, b_text);
    GroupElement bound = bound_or_precision(spec, bound_text);
    PurityWitness w = purity_witness(spec, a, b, n, bound);
    Outcome o;
    o.result["w"] = w.w.to_string();
    o.result["y"] = w.y.to_string();
    o.result["constant"] = w.constant.constant;
    o.result["up_to_truncation"] = w.constant.up_to_truncation;
    o.result["valuation"] = w.valuation.to_string();
    o.text = "w = " + w.w.to_string();
    return o;
}

Outcome do_examples(long bound, const std::optional<std::string>& only) {
    auto reports = run_example_suite(bound, only);
    Outcome o;
    json rs = json::array();
    std::string text;
    for (const auto& r : reports) {
        json j;
        j["id"] = r.id;
        j["anchor"] = r.anchor;
        j["status"] = r.pass ? "pass" : "fail";
        j["artifacts"] = r.artifacts;
        j["seed"] = std::to_string(r.seed);
        rs.push_back(j);
        if (!r.pass)
            o.code = kUnsolvable;
        text += (text.empty() ? "" : "\n") + r.id + " " + (r.pass ? "pass" : "FAIL") + "  " + r.anchor;
    }
    o.result["reports"] = rs;
    o.text = text;
    return o;
}

json error_json(const Error& e) {
    json j;
    j["kind"] = error_kind_name(e.kind());
    j["message"] = e.what();
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["message"] = pe->message();
        j["line"] = pe->pos().line;
        j["column"] = pe->pos().column;
        j["expected"] = pe->expected();
    }
    if (auto* le = dynamic_cast<const LinearSurjectivityError*>(&e)) {
        j["gamma"] = le->gamma().to_string();
        j["operator"] = le->op().to_string();
        j["rhs"] = le->rhs().to_string();
    }
    return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Exact arithmetic in Hahn fields k((t^Gamma)) with a twisted derivation", "hahnlab"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::string> field_opt, group_opt, cmap_opt, trunc_opt, format_opt, config_opt;
    app.add_option("--field", field_opt, "coefficient field: Q or Qx");
    app.add_option("--group", group_opt, "value group: Z, Q, Z/d, Z^nlex");
    app.add_option("--cmap", cmap_opt, "additive map, e.g. \"1 -> x\" or \"e1 -> 1, e2 -> 1/x\"");
    app.add_option("--trunc", trunc_opt, "default truncation (a positive group element)");
    app.add_option("--format", format_opt, "output format: text or json");
    app.add_option("--config", config_opt, "config file with key = value lines");

    std::string expr_arg, second_arg, third_arg;
    std::optional<std::string> bound_opt, only_opt;
    std::optional<long> max_iter_opt;
    long k_bound = 20, example_bound = 6;
    unsigned long n_arg = 2;

    std::string command;
    auto series_cmd = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("series", expr_arg, "series literal")->required();
        return sub;
    };
    series_cmd("eval", "canonical form of a series");
    series_cmd("derive", "twisted derivative");
    series_cmd("dagger", "logarithmic derivative f'/f");
    series_cmd("valuation", "valuation of a series");
    series_cmd("residue", "residue in k of a series in the valuation ring");
    series_cmd("constant?", "whether a series is a constant");
    CLI::App* sl = app.add_subcommand("solve-linear", "rational solutions of a linear equation over k");
    sl->add_option("operator", expr_arg, "linear operator in Y, e.g. \"Y' - Y\"")->required();
    sl->add_option("rhs", second_arg, "right-hand side in k")->required();
    CLI::App* sd = app.add_subcommand("solve-dagger", "decide a' = u a for u in k");
    sd->add_option("u", expr_arg, "element of k")->required();
    sd->add_option("--k-bound", k_bound, "largest |m| scanned for m = v(a)");
    CLI::App* lift = app.add_subcommand("lift", "differential Hensel lifting of a quasi-linear polynomial");
    lift->add_option("polynomial", expr_arg, "differential polynomial in Y, Y', ...")->required();
    lift->add_option("--bound", bound_opt, "stop once v(P(y)) reaches this");
    lift->add_option("--max-iterations", max_iter_opt, "iteration cap");
    CLI::App* nr = app.add_subcommand("nth-root", "n-th root of a unit by Newton iteration");
    nr->add_option("series", expr_arg, "series with valuation 0")->required();
    nr->add_option("n", n_arg, "root index")->required()->check(CLI::PositiveNumber);
    nr->add_option("--bound", bound_opt, "precision of the result");
    app.add_subcommand("kernel", "kernel of the additive map");
    app.add_subcommand("classify", "few/many constants classification");
    CLI::App* pu = app.add_subcommand("purity", "constant w with w^n = b and v(w) = v(a)");
    pu->add_option("a", expr_arg, "series a")->required();
    pu->add_option("b", second_arg, "constant series b")->required();
    pu->add_option("n", n_arg, "exponent")->required()->check(CLI::PositiveNumber);
    pu->add_option("--bound", bound_opt, "precision");
    CLI::App* ex = app.add_subcommand("examples", "worked example suite");
    ex->require_subcommand(1);
    CLI::App* ex_run = ex->add_subcommand("run", "run the example suite");
    ex_run->add_option("--only", only_opt, "run one example, e.g. E4");
    ex_run->add_option("--bound", example_bound, "scan bound for E4");

    // The only short option is -h, so any other "-..." argument is a negative
    // literal; a leading space keeps CLI11 from reading it as a flag.
    std::vector<std::string> reversed;
    for (auto it = args.rbegin(); it != args.rend(); ++it)
        reversed.push_back(it->size() > 1 && (*it)[0] == '-' && (*it)[1] != '-' && *it != "-h" ? " " + *it : *it);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    for (CLI::App* sub : app.get_subcommands())
        command = sub->get_name();
    (void)third_arg;

    SessionConfig config;
    bool json_out = format_opt && *format_opt == "json";
    auto emit_error = [&](const std::string& cmd, const Error& e) {
        int code = exit_code_for(e.kind());
        if (json_out) {
            json j;
            j["command"] = cmd;
            j["exit_code"] = code;
            j["error"] = error_json(e);
            out << j.dump(2) << "\n";
        } else {
            err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        }
        return code;
    };

    FieldSpec spec(CoeffField::RationalFunctions, ValueGroup::integers(),
                   AdditiveMap::zero(ValueGroup::integers(), CoeffField::RationalFunctions));
    try {
        if (config_opt) {
            std::ifstream f(*config_opt);
            if (!f)
                fail(ErrorKind::Config, "cannot read config file '" + *config_opt + "'");
            std::stringstream buf;
            buf << f.rdbuf();
            apply_config_text(config, buf.str(), *config_opt);
        }
        if (!config.truncation)
            if (auto t = env("HAHNLAB_TRUNC"))
                config.truncation = *t;
        if (field_opt)
            config.field = parse_field(*field_opt);
        if (group_opt)
            config.group = *group_opt;
        if (cmap_opt)
            config.cmap = *cmap_opt;
        if (trunc_opt)
            config.truncation = *trunc_opt;
        if (format_opt)
            config.format = parse_format(*format_opt);
        json_out = config.format == Format::Json;
        spec = config.to_spec();
    } catch (const Error& e) {
        return emit_error(command, e);
    }

    Outcome o;
    try {
        if (command == "eval")
            o = series_outcome(parse_series(spec, expr_arg));
        else if (command == "derive")
            o = series_outcome(derive_series(spec, parse_series(spec, expr_arg)));
        else if (command == "dagger")
            o = series_outcome(dagger_series(spec, parse_series(spec, expr_arg)));
        else if (command == "valuation") {
            Valuation v = parse_series(spec, expr_arg).valuation();
            o.result["result"] = v.to_string();
            o.result["kind"] = valuation_kind(v.kind);
            o.text = v.to_string();
        } else if (command == "residue") {
            RatFunc r = residue(parse_series(spec, expr_arg));
            o.result["result"] = r.to_string();
            o.text = r.to_string();
        } else if (command == "constant?") {
            ConstantTest t = is_constant(spec, parse_series(spec, expr_arg));
            o.result["constant"] = t.constant;
            o.result["up_to_truncation"] = t.up_to_truncation;
            o.text = std::string(t.constant ? "true" : "false") + (t.up_to_truncation ? " (up to truncation)" : "");
        } else if (command == "solve-linear")
            o = do_solve_linear(spec, expr_arg, second_arg);
        else if (command == "solve-dagger")
            o = do_solve_dagger(spec, expr_arg, k_bound);
        else if (command == "lift")
            o = do_lift(spec, expr_arg, bound_opt, max_iter_opt);
        else if (command == "nth-root") {
            HahnSeries u = parse_series(spec, expr_arg);
            o = series_outcome(hensel_nth_root(spec, u, n_arg, bound_or_precision(spec, bound_opt)));
        } else if (command == "kernel") {
            FgSubgroup k = c_kernel(spec.cmap);
            o.result["kernel"] = strings(k.basis());
            o.result["trivial"] = k.is_trivial();
            o.text = k.to_string();
        } else if (command == "classify")
            o = do_classify(spec);
        else if (command == "purity")
            o = do_purity(spec, expr_arg, second_arg, n_arg, bound_opt);
        else if (command == "examples")
            o = do_examples(example_bound, only_opt);
    } catch (const Error& e) {
        return emit_error(command == "examples" ? "examples run" : command, e);
    }

    const std::string shown = command == "examples" ? "examples run" : command;
    if (json_out) {
        o.result["command"] = shown;
        o.result["exit_code"] = o.code;
        out << o.result.dump(2) << "\n";
    } else {
        out << o.text << "\n";
    }
    return o.code;
}

}  // namespace hahn::cli
