#include "cli.hpp"

#include <pcoh/errors.hpp>
#include <pcoh/io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace pcoh::cli {

namespace {

struct Options {
    std::string algebra;
    std::string module;
    std::string theory = "hp";
    std::string series;
    std::string cocycle;
    std::string output;
    std::string dump_dir;
    int max_degree = 4;
    int order = -1;
    int degree = 0;
    bool table = false;
    bool json = false;
    bool representatives = false;
    bool compare = false;
};

void add_format(CLI::App* cmd, Options& o)
{
    auto* j = cmd->add_flag("--json", o.json, "Emit JSON (default)");
    auto* t = cmd->add_flag("--table", o.table, "Emit a human-readable table");
    j->excludes(t);
    cmd->add_option("-o,--output", o.output, "Write the report to a file instead of stdout");
}

// ---------------------------------------------------------------------------
// Table rendering; reads only the JSON report.

std::string cell(const Json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void render_cohomology(const Json& r, std::ostream& os)
{
    os << r["theory"].get<std::string>() << " of " << r["algebra"].get<std::string>() << " with coefficients in "
       << r["module"].get<std::string>() << " (" << r["convention"].get<std::string>() << ")\n";
    os << std::setw(8) << "degree" << std::setw(12) << "cochains" << std::setw(10) << "rank" << std::setw(8) << "dim"
       << "\n";
    const int first = r["first_degree"].get<int>();
    for (std::size_t k = 0; k < r["dims"].size(); ++k)
        os << std::setw(8) << first + static_cast<int>(k) << std::setw(12) << r["space_dims"][k].dump()
           << std::setw(10) << r["ranks"][k].dump() << std::setw(8) << r["dims"][k].dump() << "\n";
}

void render_validation(const Json& r, std::ostream& os)
{
    for (const auto& [what, rep] : r.items()) {
        os << what << ": " << (rep["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        for (const auto& v : rep["violations"])
            os << "  " << v["axiom"].get<std::string>() << " at " << v["indices"].dump() << " residual "
               << v["residual"].dump() << "\n";
    }
}

void render_check(const Json& r, std::ostream& os)
{
    os << std::setw(6) << "order" << std::setw(15) << "associativity" << std::setw(10) << "leibniz" << std::setw(8)
       << "jacobi" << "\n";
    std::map<int, std::map<std::string, bool>> grid;
    for (const auto& e : r["entries"]) grid[e["order"].get<int>()][e["axiom"].get<std::string>()] = e["zero"];
    for (const auto& [order, row] : grid) {
        auto mark = [&](const char* a) { return row.at(a) ? "0" : "nonzero"; };
        os << std::setw(6) << order << std::setw(15) << mark("associativity") << std::setw(10) << mark("leibniz")
           << std::setw(8) << mark("jacobi") << "\n";
    }
    os << (r["ok"].get<bool>() ? "all residuals vanish\n" : "nonzero residuals present\n");
}

void render_examples(const Json& r, std::ostream& os)
{
    for (const auto& e : r)
        os << std::left << std::setw(10) << e["name"].get<std::string>() << std::right << std::setw(4)
           << e["dim"].dump() << "  " << e["note"].get<std::string>() << "\n";
}

void render_decomposition(const Json& r, std::ostream& os)
{
    os << std::setw(8) << "degree" << std::setw(6) << "HP" << std::setw(6) << "chi" << std::setw(8) << "stated"
       << std::setw(11) << "corrected" << "\n";
    for (const auto& row : r["rows"])
        os << std::setw(8) << row["degree"].dump() << std::setw(6) << row["hp"].dump() << std::setw(6)
           << row["chi"].dump() << std::setw(8) << row["stated"].dump() << std::setw(11) << row["corrected"].dump()
           << "\n";
}

void render_flat(const Json& r, std::ostream& os)
{
    for (const auto& [k, v] : r.items()) os << k << ": " << cell(v) << "\n";
}

void render(const std::string& verb, const Json& r, std::ostream& os)
{
    if (verb == "cohomology") return render_cohomology(r, os);
    if (verb == "lp") {
        render_cohomology(r["cohomology"], os);
        if (r.contains("decomposition")) render_decomposition(r["decomposition"], os);
        return;
    }
    if (verb == "validate") return render_validation(r, os);
    if (verb == "deform-check") return render_check(r, os);
    if (verb == "examples") return render_examples(r, os);
    render_flat(r, os);
}

// ---------------------------------------------------------------------------
// Verbs. Each returns the report and sets the exit code.

std::string base_dir_of(const std::string& source)
{
    std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    return std::filesystem::path(path).parent_path().string();
}

ModuleSpec module_for(const Options& o, const AlgebraSpec& alg)
{
    return o.module.empty() ? regular_module(alg) : load_module(o.module);
}

Json do_validate(const Options& o, int& code)
{
    AlgebraSpec alg = load_algebra(o.algebra);
    Json out;
    ValidationReport ar = validate_algebra(alg);
    out["algebra"] = validation_to_json(ar);
    bool ok = ar.ok();
    if (!o.module.empty()) {
        ValidationReport mr = validate_module(alg, load_module(o.module));
        out["module"] = validation_to_json(mr);
        ok = ok && mr.ok();
    }
    code = ok ? ExitCode::ok : ExitCode::domain_failure;
    return out;
}

void dump_slice(const std::string& dir, const ComplexSlice& slice)
{
    std::filesystem::create_directories(dir);
    const std::string stem = (std::filesystem::path(dir) / (to_string(slice.theory) + "_d" +
                                                            std::to_string(slice.degree)))
                                 .string();
    std::ofstream mat(stem + ".mtx");
    write_matrix_dump(mat, slice.matrix);
    std::ofstream side(stem + ".json");
    side << slice_sidecar(slice).dump(2) << "\n";
    if (!mat || !side) throw DomainError("cannot write matrix dump under '" + dir + "'");
}

Json do_cohomology(const Options& o, std::ostream& err)
{
    AlgebraSpec alg = load_algebra(o.algebra);
    if (o.max_degree < 0) throw DomainError("--max-degree must be nonnegative");
    if (o.max_degree > 5 && alg.dim >= 4)
        err << "warning: cochain spaces grow like " << alg.dim << "^n; degree " << o.max_degree
            << " may take a long time\n";
    if (o.theory == "type1" || o.theory == "type2") {
        if (!o.module.empty()) throw DomainError("type I/II cohomology uses M = A");
        return report_to_json(
            type_cohomology(alg, o.theory == "type1" ? DeformationType::I : DeformationType::II, o.max_degree));
    }
    Theory theory = parse_theory(o.theory);
    ModuleSpec mod = module_for(o, alg);
    CohomologyOptions opts;
    opts.representatives = o.representatives;
    Json out = report_to_json(cohomology_dims(theory, alg, mod, o.max_degree, opts));
    if (!o.dump_dir.empty())
        for (const auto& slice : build_complex(theory, alg, mod, o.max_degree).slices) dump_slice(o.dump_dir, slice);
    return out;
}

Json do_lp(const Options& o)
{
    AlgebraSpec alg = load_algebra(o.algebra);
    Json out;
    out["cohomology"] = report_to_json(lp_cohomology(alg, o.max_degree));
    if (o.compare) out["decomposition"] = decomposition_to_json(trivial_bracket_decomposition(alg, o.max_degree));
    return out;
}

Json do_deform_check(const Options& o, int& code)
{
    DeformationSeries s = load_series(o.series, base_dir_of(o.series));
    DeformationCheckReport r = verify_deformation(s, o.order < 0 ? s.order : o.order);
    code = r.ok() ? ExitCode::ok : ExitCode::domain_failure;
    return check_report_to_json(r);
}

Json do_deform_lift(const Options& o, int& code)
{
    DeformationSeries s = load_series(o.series, base_dir_of(o.series));
    if (o.order < 0) throw DomainError("deform-lift needs --order");
    LiftResult r = lift_to(s, o.order);
    Json out;
    out["series"] = series_to_json(r.series);
    out["reached_order"] = r.series.order;
    if (r.obstructed_at) out["obstructed_at"] = *r.obstructed_at;
    code = r.obstructed_at ? ExitCode::domain_failure : ExitCode::ok;
    return out;
}

Json do_obstruction(const Options& o)
{
    DeformationSeries s = load_series(o.series, base_dir_of(o.series));
    const int n = o.order < 0 ? s.order + 1 : o.order;
    Obstruction ob = obstruction(s, n);
    Json out;
    out["order"] = ob.order;
    out["cochain"] = cochain_to_json(ob.cochain);
    out["coboundary"] = lift_step(s, n).has_value();
    return out;
}

Json do_extend(const Options& o, int& code)
{
    AlgebraSpec alg = load_algebra(o.algebra);
    ModuleSpec mod = module_for(o, alg);
    Json c = read_json_file(o.cocycle);
    BilinearMap f1 = bilinear_from_json(c.value("product", Json::array()), alg.dim, mod.dim);
    BilinearMap f0 = bilinear_from_json(c.value("bracket", Json::array()), alg.dim, mod.dim);
    if (!f0.is_skew()) throw DomainError("the bracket part of the cocycle is not skew-symmetric");
    Json out;
    CocycleCheck cc = is_poisson_2cocycle(alg, mod, f1, f0);
    out["cocycle"] = cc.cocycle;
    if (!cc.cocycle) {
        out["image"] = cochain_to_json(cc.image);
        code = ExitCode::domain_failure;
        return out;
    }
    AlgebraSpec ext = extension_algebra(alg, mod, f1, f0);
    ValidationReport v = validate_algebra(ext);
    out["extension"] = algebra_to_json(ext);
    out["validation"] = validation_to_json(v);
    code = v.ok() ? ExitCode::ok : ExitCode::internal_error;
    return out;
}

Json do_quantize(const Options& o)
{
    return quantization_to_json(quantization_obstruction_check(load_algebra(o.algebra)));
}

Json do_examples()
{
    Json out = Json::array();
    for (const auto& b : builtin_registry()) out.push_back({{"name", b.name}, {"dim", b.dim}, {"note", b.note}});
    return out;
}

Json do_dump(const Options& o, std::ostream& out_stream, bool& raw)
{
    AlgebraSpec alg = load_algebra(o.algebra);
    Theory theory = parse_theory(o.theory);
    if (o.degree < 0) throw DomainError("--degree must be nonnegative");
    ModuleSpec mod = module_for(o, alg);
    ComplexBuild b = build_complex(theory, alg, mod, o.degree);
    const ComplexSlice& slice = b.slices.back();
    if (!o.dump_dir.empty()) {
        dump_slice(o.dump_dir, slice);
        return slice_sidecar(slice);
    }
    raw = true;
    write_matrix_dump(out_stream, slice.matrix);
    return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Poisson algebra cohomology and deformations over the rationals", "pcoh"};
    app.require_subcommand(1);
    Options o;

    auto* validate = app.add_subcommand("validate", "Check the axioms of an algebra (and module)");
    validate->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    validate->add_option("--module", o.module, "Module file");
    add_format(validate, o);

    auto* cohom = app.add_subcommand("cohomology", "Cohomology dimensions");
    cohom->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    cohom->add_option("--module", o.module, "Module file (default: the regular module)");
    cohom->add_option("--theory", o.theory, "hp, quasi, omega, hh, ce, type1 or type2")
        ->check(CLI::IsMember({"hp", "quasi", "omega", "hh", "ce", "type1", "type2"}));
    cohom->add_option("--max-degree", o.max_degree, "Highest degree (default 4)");
    cohom->add_flag("--representatives", o.representatives, "Include cocycle representatives");
    cohom->add_option("--dump-matrices", o.dump_dir, "Write every coboundary matrix to this directory");
    add_format(cohom, o);

    auto* lp = app.add_subcommand("lp", "Lichnerowicz-Poisson cohomology of a commutative algebra");
    lp->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    lp->add_option("--max-degree", o.max_degree, "Highest degree (default 4)");
    lp->add_flag("--compare", o.compare, "Compare HP with the zero-bracket decomposition");
    add_format(lp, o);

    auto* check = app.add_subcommand("deform-check", "Residuals of the deformation equations");
    check->add_option("--series", o.series, "Deformation file or builtin:table3[:S]")->required();
    check->add_option("--order", o.order, "Highest order to check (default: the series order)");
    add_format(check, o);

    auto* lift = app.add_subcommand("deform-lift", "Extend a deformation order by order");
    lift->add_option("--series", o.series, "Deformation file")->required();
    lift->add_option("--order", o.order, "Target order")->required();
    add_format(lift, o);

    auto* obst = app.add_subcommand("obstruction", "Obstruction cocycle for the next order");
    obst->add_option("--series", o.series, "Deformation file")->required();
    obst->add_option("--order", o.order, "Order n (default: series order + 1)");
    add_format(obst, o);

    auto* ext = app.add_subcommand("extend", "Extension algebra by a 2-cocycle");
    ext->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    ext->add_option("--module", o.module, "Module file (default: the regular module)");
    ext->add_option("--cocycle", o.cocycle, "JSON with \"product\" and \"bracket\" constant lists")->required();
    add_format(ext, o);

    auto* quant = app.add_subcommand("quantize-check", "Test for the HP^2 obstruction to quantization");
    quant->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    add_format(quant, o);

    auto* examples = app.add_subcommand("examples", "List the builtin algebras");
    add_format(examples, o);

    auto* dump = app.add_subcommand("dump", "Write one coboundary matrix in the dump format");
    dump->add_option("--algebra", o.algebra, "builtin:NAME, file:PATH or PATH")->required();
    dump->add_option("--module", o.module, "Module file (default: the regular module)");
    dump->add_option("--theory", o.theory, "hp, quasi, omega, hh or ce")
        ->check(CLI::IsMember({"hp", "quasi", "omega", "hh", "ce"}));
    dump->add_option("--degree", o.degree, "Source degree of the map")->required();
    dump->add_option("--dir", o.dump_dir, "Write matrix and sidecar here instead of stdout");

    std::vector<const char*> argv{"pcoh"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ExitCode::ok : ExitCode::usage_error;
    }

    const std::string verb = app.get_subcommands().front()->get_name();
    int code = ExitCode::ok;
    Json report;
    bool raw = false;
    std::ostringstream data;
    try {
        if (verb == "validate") report = do_validate(o, code);
        else if (verb == "cohomology") report = do_cohomology(o, err);
        else if (verb == "lp") report = do_lp(o);
        else if (verb == "deform-check") report = do_deform_check(o, code);
        else if (verb == "deform-lift") report = do_deform_lift(o, code);
        else if (verb == "obstruction") report = do_obstruction(o);
        else if (verb == "extend") report = do_extend(o, code);
        else if (verb == "quantize-check") report = do_quantize(o);
        else if (verb == "examples") report = do_examples();
        else report = do_dump(o, data, raw);
    } catch (const StructureError& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::domain_failure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::domain_failure;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return ExitCode::internal_error;
    }

    if (!raw) {
        if (o.table)
            render(verb, report, data);
        else
            data << report.dump(2) << "\n";
    }
    if (o.output.empty()) {
        out << data.str();
    } else {
        std::ofstream f(o.output);
        f << data.str();
        if (!f) {
            err << "error: cannot write '" << o.output << "'\n";
            return ExitCode::domain_failure;
        }
    }
    if (code == ExitCode::domain_failure) err << verb << ": check failed\n";
    return code;
}

}  // namespace pcoh::cli
