#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "json.hpp"

#include "cohwit/analysis.hpp"
#include "cohwit/document.hpp"
#include "cohwit/synthesis.hpp"
#include "cohwit/witness.hpp"

namespace cohwit::cli {

using nlohmann::json;

namespace {

struct Settings {
    std::string x_text;
    double tol = Tolerances<double>{}.psd;
    std::uint64_t seed = 0;
    std::string out_path;
    std::vector<std::string> files;
    long dim = 0;
    double perturbation = 0.0;
    int grid_points = 1024;
};

struct Input {
    std::string label;
    HermitianMatrix<double> matrix;
};

Input load(const std::string& path, const Tolerances<double>& tol)
{
    const MatrixDocument doc = read_matrix_file(path);
    return {doc.label.value_or(path), to_hermitian(doc, tol.symmetry)};
}

json matrix_json(const HermitianMatrix<double>& h, std::optional<std::string> label = {})
{
    return to_json(to_document(h, std::move(label)));
}

json interval_json(const TraceClass& x)
{
    const IntervalSpec iv = interval_of(x);
    json j = {{"kind", to_string(iv.kind)}, {"lo", iv.lo}};
    if (iv.kind == IntervalSpec::Kind::ClosedSegment)
        j["hi"] = iv.hi;
    return j;
}

json vector_json(const RealVector<double>& v)
{
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

/// Shared state of one invocation: parsed settings, resolved class and
/// tolerances, and the input labels recorded in the report.
struct Context {
    const Settings& s;
    TraceClass x;
    Tolerances<double> tol;
    std::vector<std::string> labels;

    std::vector<Input> inputs()
    {
        std::vector<Input> out;
        for (const auto& f : s.files) {
            out.push_back(load(f, tol));
            labels.push_back(out.back().label);
        }
        return out;
    }

    std::vector<Witness<double>> witnesses()
    {
        std::vector<Witness<double>> out;
        for (auto& in : inputs())
            out.push_back(Witness<double>::make(in.matrix, x, tol.psd));
        return out;
    }
};

json cmd_validate(Context& ctx)
{
    const auto in = ctx.inputs().front();
    const auto m = validate_witness(in.matrix, ctx.x, ctx.tol.psd);
    json p = {{"member", m.member},
              {"nontrivial", m.nontrivial},
              {"min_diagonal", m.min_diagonal},
              {"trace", m.trace},
              {"min_eigenvalue", m.min_eigenvalue},
              {"trace_class", ctx.x.to_string()},
              {"criterion", to_string(criterion_family(ctx.x))}};
    if (m.member)
        p["region"] = to_string(region_structure(Witness<double>::make(in.matrix, ctx.x, ctx.tol.psd),
                                                 ctx.tol.psd));
    return p;
}

json cmd_detect(Context& ctx)
{
    const auto ins = ctx.inputs();
    const auto w = Witness<double>::make(ins[0].matrix, ctx.x, ctx.tol.psd);
    const auto rho = DensityMatrix<double>::from(ins[1].matrix);
    const auto v = detect(w, rho, ctx.tol.psd);
    return {{"expectation", v.expectation},
            {"interval", interval_json(ctx.x)},
            {"outcome", to_string(v.outcome)},
            {"trace_class", ctx.x.to_string()}};
}

json cmd_synthesize(Context& ctx)
{
    const auto rho = DensityMatrix<double>::from(ctx.inputs().front().matrix);
    const auto w = synthesize_witness(rho, ctx.x, ctx.tol);
    const auto v = detect(w, rho, ctx.tol.psd);
    return {{"expectation", v.expectation},
            {"outcome", to_string(v.outcome)},
            {"trace_class", ctx.x.to_string()},
            {"witness", matrix_json(w.matrix(), "synthesized")}};
}

json cmd_evade(Context& ctx)
{
    const auto ws = ctx.witnesses();
    const auto ev = evading_state(ws, ctx.x, ctx.tol.psd);
    json expectations = json::array();
    json outcomes = json::array();
    for (const auto& w : ws) {
        const auto v = detect(w, ev.state, ctx.tol.psd);
        expectations.push_back(v.expectation);
        outcomes.push_back(to_string(v.outcome));
    }
    json p = {{"M", ev.constants.M},
              {"epsilon", ev.constants.epsilon},
              {"expectations", expectations},
              {"outcomes", outcomes},
              {"state", matrix_json(ev.state.hermitian(), "evading_state")},
              {"trace_class", ctx.x.to_string()}};
    if (ev.constants.m1)
        p["m1"] = *ev.constants.m1;
    return p;
}

json cmd_common(Context& ctx)
{
    const auto ws = ctx.witnesses();
    CommonStateOptions<double> opt;
    opt.grid_points = ctx.s.grid_points;
    opt.perturbation = ctx.s.perturbation;
    const auto rho = common_state_C(ws, ctx.x, opt, ctx.tol.psd);
    json expectations = json::array();
    for (const auto& w : ws)
        expectations.push_back(expectation(w.matrix(), rho));
    return {{"expectations", expectations},
            {"grid_points", opt.grid_points},
            {"perturbation", opt.perturbation},
            {"state", matrix_json(rho.hermitian(), "common_state")},
            {"trace_class", ctx.x.to_string()}};
}

json cmd_intersect(Context& ctx)
{
    const auto ws = ctx.witnesses();
    SimplexOptions<double> solver;
    solver.seed = ctx.s.seed;
    if (criterion_family(ctx.x) == CriterionFamily::A) {
        const auto r = intersection_sufficient_A(ws, ctx.x, solver, ctx.tol.psd);
        json p = {{"subsets_checked", r.subsets_checked},
                  {"sufficient_condition_holds", r.sufficient_condition_holds},
                  {"trace_class", ctx.x.to_string()}};
        if (r.failing_subset) {
            json members = json::array();
            for (std::size_t i = 0; i < ws.size(); ++i)
                if (*r.failing_subset & (1u << i))
                    members.push_back(i + 1);
            p["failing_subset"] = members;
        }
        return p;
    }
    IntersectionOptions<double> opt;
    opt.solver = solver;
    const auto v = intersection_empty_B(ws, ctx.x, opt, ctx.tol.psd);
    json p = {{"best_min_eigenvalue", v.best_min_eigenvalue},
              {"status", to_string(v.status)},
              {"trace_class", ctx.x.to_string()}};
    if (v.certificate)
        p["certificate"] = {{"weights", vector_json(v.certificate->weights)},
                            {"combined_min_eigenvalue", v.certificate->combined_min_eigenvalue}};
    if (v.common_state) {
        json expectations = json::array();
        for (const auto& w : ws)
            expectations.push_back(expectation(w.matrix(), *v.common_state));
        p["expectations"] = expectations;
        p["state"] = matrix_json(v.common_state->hermitian(), "common_state");
    }
    return p;
}

json cmd_relation(Context& ctx)
{
    const auto ws = ctx.witnesses();
    const auto r = region_relation(ws[0], ws[1], ctx.x, ctx.tol.psd);
    json p = {{"relation", to_string(r.relation)}, {"trace_class", ctx.x.to_string()}};
    if (r.scale)
        p["scale"] = *r.scale;
    if (r.psd_remainder) {
        p["psd_remainder"] = matrix_json(*r.psd_remainder, "psd_remainder");
        p["psd_remainder_min_eigenvalue"] = min_eigenvalue(*r.psd_remainder);
    }
    return p;
}

json cmd_family(Context& ctx)
{
    if (ctx.s.dim < 1)
        throw Error(ErrorKind::InvalidArgument, "--dim must be positive");
    const auto fam = complete_family<double>(ctx.s.dim, ctx.x);
    json members = json::array();
    for (const auto& [label, m] : fam.members)
        members.push_back(matrix_json(m, label.to_string()));
    return {{"count", fam.members.size()},
            {"dim", fam.dim},
            {"members", members},
            {"trace_class", ctx.x.to_string()}};
}

json cmd_kerneldim(Context& ctx)
{
    const auto ws = ctx.witnesses();
    const auto d = ws.front().dim();
    return {{"dimension", orthocomplement_dimension(ws.front(), ctx.tol)},
            {"expected", d * d - 1},
            {"trace_class", ctx.x.to_string()}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Settings s;
    CLI::App app{"Coherence witness toolkit", "cohwit"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    app.add_option("--x", s.x_text, "Trace class: 0, r=<float>, gt, geq")->required();
    app.add_option("--tol", s.tol, "PSD / boundary tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", s.seed, "Seed for randomized search");
    app.add_option("--out", s.out_path, "Write the report to this path");

    using Handler = std::function<json(Context&)>;
    std::map<CLI::App*, std::pair<std::string, Handler>> handlers;
    const auto add = [&](const std::string& name, const std::string& help, std::size_t min_files,
                         int max_files, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        auto* opt = sub->add_option("files", s.files, "Matrix documents");
        if (min_files > 0)
            opt->required()->expected(static_cast<int>(min_files), max_files);
        handlers.emplace(sub, std::pair{name, std::move(h)});
        return sub;
    };
    add("validate", "Check membership in W_x and nontriviality", 1, 1, cmd_validate);
    add("detect", "Evaluate a witness on a state", 2, 2, cmd_detect);
    add("synthesize", "Build a witness detecting a coherent state", 1, 1, cmd_synthesize);
    add("evade", "Build a coherent state no listed witness detects", 1, -1, cmd_evade);
    CLI::App* common = add("common", "Build a state all x=0 witnesses detect", 1, -1, cmd_common);
    common->add_option("--perturbation", s.perturbation, "Grid shift / blend in [0, 1)");
    common->add_option("--grid-points", s.grid_points, "Mixing grid size");
    add("intersect", "Decide whether detection regions intersect", 1, -1, cmd_intersect);
    add("relation", "Equality / inclusion of two detection regions", 2, 2, cmd_relation);
    CLI::App* family = add("family", "Emit a finite complete witness family", 0, 0, cmd_family);
    family->add_option("--dim", s.dim, "Matrix dimension")->required();
    add("kerneldim", "Dimension of the zero-expectation span", 1, 1, cmd_kerneldim);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForVersion&) {
        out << version << "\n";
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ParseFailure;
    }

    std::optional<TraceClass> x;
    try {
        x = TraceClass::parse(s.x_text);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ParseFailure;
    }

    try {
        Context ctx{s, *x, {}, {}};
        ctx.tol.psd = s.tol;
        const auto& [name, handler] = std::find_if(handlers.begin(), handlers.end(), [](const auto& kv) {
                                          return kv.first->parsed();
                                      })->second;
        json payload = handler(ctx);

        json report = {{"command", name},
                       {"inputs", ctx.labels},
                       {"payload", std::move(payload)},
                       {"seed", s.seed},
                       {"tolerances",
                        {{"coherence", ctx.tol.coherence},
                         {"psd", ctx.tol.psd},
                         {"rank", ctx.tol.rank},
                         {"symmetry", ctx.tol.symmetry}}},
                       {"version", version}};
        const std::string text = serialize(report);
        if (s.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(s.out_path);
            if (!(f << text))
                throw std::runtime_error("cannot write '" + s.out_path + "'");
        }
        return Success;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return DomainFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return InternalFailure;
    }
}

} // namespace cohwit::cli
