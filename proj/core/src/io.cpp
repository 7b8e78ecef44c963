#include <pcoh/errors.hpp>
#include <pcoh/io.hpp>

#include <filesystem>
#include <fstream>

namespace pcoh {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw StructureError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::size_t positive_size(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() <= 0)
        throw StructureError(std::string(what) + " must be a positive integer");
    return j.get<std::size_t>();
}

Index index_from_json(const Json& j)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw StructureError("structure-constant index must be a nonnegative integer");
    return j.get<Index>();
}

Vector vector_from_json(const Json& j)
{
    if (!j.is_array()) throw StructureError("expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json vector_to_json(const Vector& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_to_json(x));
    return out;
}

std::vector<std::string> names_from_json(const Json& j, std::size_t n, const std::string& prefix)
{
    std::vector<std::string> names;
    if (j.is_null()) {
        for (std::size_t k = 0; k < n; ++k) names.push_back(prefix + std::to_string(k));
        return names;
    }
    if (!j.is_array() || j.size() != n) throw StructureError("basis must list one name per dimension");
    for (const auto& x : j) {
        if (!x.is_string()) throw StructureError("basis names must be strings");
        names.push_back(x.get<std::string>());
    }
    return names;
}

std::string resolve(const std::string& path, const std::string& base_dir)
{
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return p.string();
}

}  // namespace

Json rational_to_json(const Rational& value)
{
    return to_string(value);
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump(), 10));
    throw StructureError("rationals must be \"p/q\" strings or integers, got " + j.dump());
}

Json constants_to_json(const StructureConstants& constants)
{
    Json out = Json::array();
    for (const auto& c : constants) out.push_back(Json::array({c.i, c.j, c.k, rational_to_json(c.value)}));
    return out;
}

StructureConstants constants_from_json(const Json& j)
{
    if (j.is_null()) return {};
    if (!j.is_array()) throw StructureError("structure constants must be an array of [i, j, k, value]");
    StructureConstants out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 4) throw StructureError("structure constant must be [i, j, k, value]");
        out.push_back({index_from_json(e[0]), index_from_json(e[1]), index_from_json(e[2]), rational_from_json(e[3])});
    }
    return out;
}

Json algebra_to_json(const AlgebraSpec& spec)
{
    Json out;
    out["name"] = spec.name;
    out["dim"] = spec.dim;
    out["basis"] = spec.basis_names;
    out["unit"] = vector_to_json(spec.unit);
    out["mult"] = constants_to_json(spec.mult);
    out["bracket"] = constants_to_json(spec.bracket);
    return out;
}

AlgebraSpec algebra_from_json(const Json& j)
{
    if (!j.is_object()) throw StructureError("algebra must be a JSON object");
    AlgebraSpec spec;
    spec.dim = positive_size(field(j, "dim"), "dim");
    spec.name = j.value("name", std::string("inline"));
    spec.basis_names = names_from_json(j.contains("basis") ? j["basis"] : Json(), spec.dim, "v");
    spec.unit = vector_from_json(field(j, "unit"));
    spec.mult = constants_from_json(field(j, "mult"));
    spec.bracket = constants_from_json(j.contains("bracket") ? j["bracket"] : Json());
    check_structure(spec);
    return spec;
}

Json module_to_json(const ModuleSpec& spec)
{
    Json out;
    out["name"] = spec.name;
    out["dim"] = spec.dim;
    out["basis"] = spec.basis_names;
    out["left"] = constants_to_json(spec.left);
    out["right"] = constants_to_json(spec.right);
    out["lie"] = constants_to_json(spec.lie);
    out["flavor"] = spec.flavor == ModuleFlavor::poisson ? "poisson" : "quasi-poisson";
    return out;
}

ModuleSpec module_from_json(const Json& j)
{
    if (!j.is_object()) throw StructureError("module must be a JSON object");
    ModuleSpec spec;
    spec.dim = positive_size(field(j, "dim"), "dim");
    spec.name = j.value("name", std::string("inline"));
    spec.basis_names = names_from_json(j.contains("basis") ? j["basis"] : Json(), spec.dim, "u");
    spec.left = constants_from_json(field(j, "left"));
    spec.right = constants_from_json(field(j, "right"));
    spec.lie = constants_from_json(j.contains("lie") ? j["lie"] : Json());
    std::string flavor = j.value("flavor", std::string("poisson"));
    if (flavor == "poisson")
        spec.flavor = ModuleFlavor::poisson;
    else if (flavor == "quasi-poisson" || flavor == "quasi")
        spec.flavor = ModuleFlavor::quasi_poisson;
    else
        throw StructureError("unknown module flavor '" + flavor + "'");
    return spec;
}

Json cochain_to_json(const Cochain& cochain)
{
    Json out;
    out["theory"] = to_string(cochain.space.theory);
    out["degree"] = cochain.space.degree;
    Json comps = Json::array();
    for (const auto& c : cochain.space.components) {
        Json cj;
        cj["i"] = c.i;
        cj["j"] = c.j;
        Json coords = Json::array();
        for (std::size_t k = 0; k < c.dim; ++k) coords.push_back(rational_to_json(cochain.coords[c.offset + k]));
        cj["coords"] = coords;
        comps.push_back(cj);
    }
    out["components"] = comps;
    return out;
}

Cochain cochain_from_json(const Json& j, std::size_t d, std::size_t m)
{
    Theory theory = parse_theory(field(j, "theory").get<std::string>());
    const Json& deg = field(j, "degree");
    if (!deg.is_number_integer()) throw StructureError("degree must be an integer");
    Cochain out{space_layout(theory, deg.get<int>(), d, m), {}};
    out.coords = zero_vector(out.space.total);
    const Json& comps = field(j, "components");
    if (!comps.is_array() || comps.size() != out.space.components.size())
        throw StructureError("cochain components do not match the layout");
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const auto& c = out.space.components[k];
        if (field(comps[k], "i").get<int>() != c.i || field(comps[k], "j").get<int>() != c.j)
            throw StructureError("cochain components are out of order");
        Vector coords = vector_from_json(field(comps[k], "coords"));
        if (coords.size() != c.dim) throw StructureError("component has the wrong number of coordinates");
        std::copy(coords.begin(), coords.end(), out.coords.begin() + static_cast<std::ptrdiff_t>(c.offset));
    }
    return out;
}

Json bilinear_to_json(const BilinearMap& map)
{
    return constants_to_json(map.to_constants());
}

BilinearMap bilinear_from_json(const Json& j, std::size_t in_dim, std::size_t out_dim)
{
    return BilinearMap::from_constants(in_dim, out_dim, constants_from_json(j));
}

Json series_to_json(const DeformationSeries& series, const std::string& algebra_ref)
{
    Json out;
    out["algebra"] = algebra_ref.empty() ? algebra_to_json(series.alg) : Json(algebra_ref);
    out["order"] = series.order;
    Json m = Json::array(), l = Json::array();
    for (const auto& t : series.m_terms) m.push_back(bilinear_to_json(t));
    for (const auto& t : series.l_terms) l.push_back(bilinear_to_json(t));
    out["m_terms"] = m;
    out["l_terms"] = l;
    return out;
}

DeformationSeries series_from_json(const Json& j, const std::string& base_dir)
{
    DeformationSeries s;
    const Json& a = field(j, "algebra");
    s.alg = a.is_string() ? load_algebra(a.get<std::string>(), base_dir) : algebra_from_json(a);
    const Json& order = field(j, "order");
    if (!order.is_number_integer() || order.get<int>() < 0) throw StructureError("order must be a nonnegative integer");
    s.order = order.get<int>();
    for (const char* key : {"m_terms", "l_terms"}) {
        if (!j.contains(key)) continue;
        if (!j[key].is_array()) throw StructureError(std::string(key) + " must be an array");
        auto& list = std::string(key) == "m_terms" ? s.m_terms : s.l_terms;
        for (const auto& t : j[key]) list.push_back(bilinear_from_json(t, s.alg.dim, s.alg.dim));
    }
    check_series(s);
    return s;
}

Json report_to_json(const CohomologyReport& report)
{
    Json out;
    out["theory"] = report.theory;
    out["algebra"] = report.algebra;
    out["module"] = report.module;
    out["convention"] = report.convention;
    out["first_degree"] = report.first_degree;
    out["max_degree"] = report.max_degree;
    out["dims"] = report.dims;
    out["ranks"] = report.ranks;
    out["space_dims"] = report.space_dims;
    out["boundary_exact"] = report.boundary_exact;
    if (!report.representatives.empty()) {
        Json reps = Json::array();
        for (const auto& degree : report.representatives) {
            Json dj = Json::array();
            for (const auto& v : degree) dj.push_back(vector_to_json(v));
            reps.push_back(dj);
        }
        out["representatives"] = reps;
    }
    return out;
}

Json check_report_to_json(const DeformationCheckReport& report)
{
    Json out;
    out["upto"] = report.upto;
    out["ok"] = report.ok();
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json ej;
        ej["axiom"] = e.axiom;
        ej["order"] = e.order;
        ej["zero"] = e.zero;
        if (!e.zero) {
            ej["witness"] = e.witness;
            ej["residual"] = vector_to_json(e.residual);
        }
        entries.push_back(ej);
    }
    out["entries"] = entries;
    return out;
}

Json validation_to_json(const ValidationReport& report)
{
    Json out;
    out["ok"] = report.ok();
    Json v = Json::array();
    for (const auto& x : report.violations) {
        Json xj;
        xj["axiom"] = x.axiom;
        xj["indices"] = x.indices;
        xj["residual"] = vector_to_json(x.residual);
        v.push_back(xj);
    }
    out["violations"] = v;
    return out;
}

Json les_to_json(const LesReport& report)
{
    Json out;
    out["feasible"] = report.feasible;
    out["message"] = report.message;
    if (report.failing_position) out["failing_position"] = *report.failing_position;
    Json terms = Json::array();
    for (const auto& t : report.terms) terms.push_back({{"label", t.label}, {"dim", t.dim}, {"rank", t.rank}});
    out["terms"] = terms;
    return out;
}

Json decomposition_to_json(const DecompositionReport& report)
{
    Json out;
    out["hochschild"] = report.hochschild;
    out["z2"] = report.z2;
    out["stated_holds"] = report.stated_holds();
    out["corrected_holds"] = report.corrected_holds();
    Json rows = Json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"degree", r.degree},
                        {"hp", r.hp},
                        {"chi", r.chi},
                        {"stated", r.stated},
                        {"corrected", r.corrected},
                        {"stated_matches", r.stated_matches},
                        {"corrected_matches", r.corrected_matches}});
    out["rows"] = rows;
    return out;
}

Json quantization_to_json(const QuantizationReport& report)
{
    return {{"verdict", to_string(report.verdict)},
            {"hp2", report.hp2},
            {"bracket_nonzero", report.bracket_nonzero},
            {"reason", report.reason}};
}

Json slice_sidecar(const ComplexSlice& slice)
{
    auto layout = [](const CochainSpace& s) {
        Json comps = Json::array();
        for (const auto& c : s.components)
            comps.push_back({{"i", c.i}, {"j", c.j}, {"offset", c.offset}, {"dim", c.dim}});
        return comps;
    };
    Json out;
    out["theory"] = to_string(slice.theory);
    out["degree"] = slice.degree;
    out["rows"] = slice.matrix.rows();
    out["cols"] = slice.matrix.cols();
    out["nnz"] = slice.matrix.nnz();
    out["convention"] = to_string(slice.convention);
    out["source_components"] = layout(slice.source);
    out["target_components"] = layout(slice.target);
    return out;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw StructureError("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace {

std::string file_part(const std::string& source, const std::string& base_dir)
{
    std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    return resolve(path, base_dir);
}

}  // namespace

AlgebraSpec load_algebra(const std::string& source, const std::string& base_dir)
{
    if (source.rfind("builtin:", 0) == 0) return builtin(source.substr(8));
    std::string path = file_part(source, base_dir);
    AlgebraSpec spec = algebra_from_json(read_json_file(path));
    if (spec.name == "inline") spec.name = std::filesystem::path(path).stem().string();
    return spec;
}

ModuleSpec load_module(const std::string& source, const std::string& base_dir)
{
    std::string path = file_part(source, base_dir);
    ModuleSpec spec = module_from_json(read_json_file(path));
    if (spec.name == "inline") spec.name = std::filesystem::path(path).stem().string();
    return spec;
}

DeformationSeries load_series(const std::string& source, const std::string& base_dir)
{
    if (source.rfind("builtin:table3", 0) == 0) {
        // builtin:table3 or builtin:table3:S
        Rational s(1);
        if (source.size() > 14 && source[14] == ':') s = parse_rational(source.substr(15));
        return m2_table3_series(s);
    }
    std::string path = file_part(source, base_dir);
    return series_from_json(read_json_file(path), std::filesystem::path(path).parent_path().string());
}

}  // namespace pcoh
