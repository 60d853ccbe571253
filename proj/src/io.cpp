#include "mq/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mq {
namespace {

using nlohmann::json;

Int parse_bigint(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<int64_t>()));
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw ParseError(where + ": invalid integer literal '" +
                             v.get<std::string>() + "'");
        }
    }
    throw ParseError(where + ": expected integer or integer string");
}

json bigint_to_json(const Int& z) {
    if (z.fits_slong_p()) return json(static_cast<int64_t>(z.get_si()));
    return json(z.get_str());
}

}  // namespace

PolySystem parse_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("system file: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "mq-system")
        throw ParseError("system file: missing \"format\": \"mq-system\" header");
    if (!j.contains("num_vars") || !j["num_vars"].is_number_integer())
        throw ParseError("system file: header needs integer num_vars");
    const int n = j["num_vars"].get<int>();
    if (n < 0) throw ParseError("system file: num_vars must be >= 0");
    Field field = field_from_name(j.value("field", ""));

    PolySystem sys(n, field);
    const json& polys = j.value("polys", json::array());
    for (size_t pi = 0; pi < polys.size(); ++pi) {
        const json& terms = polys[pi];
        if (!terms.is_array())
            throw ParseError("poly " + std::to_string(pi) + ": expected term list");
        Polynomial p(n, field);
        for (size_t ti = 0; ti < terms.size(); ++ti) {
            const std::string where =
                "poly " + std::to_string(pi) + " term " + std::to_string(ti);
            const json& t = terms[ti];
            if (!t.is_array() || t.size() != 3 || !t[2].is_array())
                throw ParseError(where + ": expected [num, den, [exponents]]");
            if (t[2].size() != static_cast<size_t>(n))
                throw ParseError(where + ": exponent vector has length " +
                                 std::to_string(t[2].size()) + ", expected " +
                                 std::to_string(n));
            Int num = parse_bigint(t[0], where);
            Int den = parse_bigint(t[1], where);
            if (den == 0) throw ParseError(where + ": zero denominator");
            if (field == Field::kF2 && den != 1)
                throw ParseError(where + ": F2 terms require denominator 1");
            std::vector<int> exps(n);
            for (int i = 0; i < n; ++i) {
                if (!t[2][i].is_number_integer() || t[2][i].get<int64_t>() < 0)
                    throw ParseError(where + ": exponents must be non-negative integers");
                exps[i] = t[2][i].get<int>();
            }
            try {
                p.add_term(Monomial(std::move(exps)), rational_of(num, den));
            } catch (const Error& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
        sys.add(std::move(p));
    }
    sys.set_includes_field_equations(j.value("includes_field_equations", false));
    return sys;
}

PolySystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

std::string format_system(const PolySystem& sys) {
    json j;
    j["format"] = "mq-system";
    j["version"] = 1;
    j["num_vars"] = sys.num_vars();
    j["field"] = field_name(sys.field());
    j["includes_field_equations"] = sys.includes_field_equations();
    json polys = json::array();
    for (const auto& p : sys.polys()) {
        json terms = json::array();
        for (const auto& [m, c] : p.terms()) {
            json t = json::array();
            t.push_back(bigint_to_json(c.get_num()));
            t.push_back(bigint_to_json(c.get_den()));
            t.push_back(json(m.exponents()));
            terms.push_back(std::move(t));
        }
        polys.push_back(std::move(terms));
    }
    j["polys"] = std::move(polys);
    return j.dump(1) + "\n";
}

void save_system(const PolySystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write system file: " + path);
    out << format_system(sys);
}

std::string format_matrix(const MacaulaySystem& sys) {
    std::ostringstream os;
    os << "mq-matrix 1\n";
    os << "flavor " << (sys.flavor == Flavor::kPlain ? "plain" : "boolean") << "\n";
    os << "degree_kind " << degree_kind_name(sys.kind) << "\n";
    os << "degree " << sys.degree << "\n";
    os << "num_vars " << sys.num_vars << "\n";
    os << "rows " << sys.m.rows() << "\n";
    os << "cols " << sys.m.cols() << "\n";
    auto exps = [](const Monomial& m) {
        std::string s;
        for (int i = 0; i < m.num_vars(); ++i) {
            if (i) s += ",";
            s += std::to_string(m.exponent(i));
        }
        return s;
    };
    for (size_t r = 0; r < sys.m.row_labels.size(); ++r)
        os << "row " << r << " " << exps(sys.m.row_labels[r].multiplier) << " "
           << sys.m.row_labels[r].poly_index << "\n";
    for (size_t c = 0; c < sys.m.col_labels.size(); ++c)
        os << "col " << c << " " << exps(sys.m.col_labels[c]) << "\n";
    for (int r = 0; r < sys.m.rows(); ++r)
        for (const auto& [c, v] : sys.m.mat.row[r])
            os << "entry " << r << " " << c << " " << v.get_num().get_str() << " "
               << v.get_den().get_str() << "\n";
    for (const auto& [r, v] : sys.b)
        os << "bentry " << r << " " << v.get_num().get_str() << " "
           << v.get_den().get_str() << "\n";
    os << "end\n";
    return os.str();
}

}  // namespace mq
