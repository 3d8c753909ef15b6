#include "localinv/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace localinv {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ParseError(where + ": " + what); }

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& where, const char* key) { return where + "." + key; }

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_scalar(j.get<std::string>());
        if (j.is_number_integer()) return Scalar(std::to_string(j.get<long long>()));
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "expected a rational string such as \"3/4\" or an integer");
}

std::vector<int> int_list(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) fail(at(where, i), "expected an integer");
        out.push_back(j[i].get<int>());
    }
    return out;
}

DimensionVector dims_from_json(const Json& j, const std::string& where) {
    try {
        return DimensionVector(int_list(j, where));
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Json string_list(const std::vector<Scalar>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Json read_json_arg(const std::string& text_or_path) {
    const auto first = text_or_path.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
        try {
            return Json::parse(text_or_path);
        } catch (const Json::parse_error& e) {
            throw ParseError(std::string("inline JSON: ") + e.what());
        }
    }
    return read_json_file(text_or_path);
}

Json to_json(const TraceMonomial& t) {
    Json sigma = Json::array();
    for (const auto& s : t.sigma) sigma.push_back(cycle_decomposition(s).to_string());
    return Json{{"M", t.M.entries}, {"sigma", sigma}};
}

TraceMonomial monomial_from_json(const Json& j, const std::string& where) {
    TraceMonomial t;
    t.M.entries = int_list(field(j, "M", where), at(where, "M"));
    t.M.m = t.M.entries.empty() ? 1 : *std::max_element(t.M.entries.begin(), t.M.entries.end());
    if (j.contains("m")) {
        if (!j["m"].is_number_integer()) fail(at(where, "m"), "expected an integer");
        t.M.m = j["m"].get<int>();
    }
    const auto& sigma = field(j, "sigma", where);
    if (!sigma.is_array() || sigma.empty()) fail(at(where, "sigma"), "expected a non-empty array of permutations");
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const auto w = at(at(where, "sigma"), i);
        try {
            if (sigma[i].is_string()) {
                t.sigma.push_back(Permutation::parse_cycles(sigma[i].get<std::string>(), t.M.entries.size()));
            } else {
                t.sigma.push_back(Permutation::from_one_line(int_list(sigma[i], w)));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            fail(w, e.what());
        }
    }
    try {
        t.validate();
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    return t;
}

Json to_json(const Matrix& a) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(to_string(a(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) fail(at(where, std::size_t{0}), "expected an array");
    const std::size_t cols = j[0].size();
    Matrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            fail(at(where, r), "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = scalar_from_json(j[r][c], at(at(where, r), c));
    }
    return out;
}

Json to_json(const Endomorphism& a) { return Json{{"dims", a.dims.dims()}, {"entries", to_json(a.entries)}}; }

Endomorphism endomorphism_from_json(const Json& j, const std::string& where) {
    Endomorphism out{dims_from_json(field(j, "dims", where), at(where, "dims")),
                     matrix_from_json(field(j, "entries", where), at(where, "entries"))};
    if (out.entries.rows() != out.dims.total() || out.entries.cols() != out.dims.total()) {
        fail(at(where, "entries"), "expected a " + std::to_string(out.dims.total()) + "x" +
                                       std::to_string(out.dims.total()) + " matrix for dims " +
                                       field(j, "dims", where).dump());
    }
    return out;
}

Json to_json(const SimpleEndo& s) {
    Json factors = Json::array();
    for (const auto& f : s.factors) factors.push_back(to_json(f));
    return Json{{"factors", factors}};
}

SimpleEndo simple_endo_from_json(const Json& j, const std::string& where) {
    const auto& factors = field(j, "factors", where);
    if (!factors.is_array() || factors.empty()) fail(at(where, "factors"), "expected a non-empty array of matrices");
    SimpleEndo out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto m = matrix_from_json(factors[i], at(at(where, "factors"), i));
        if (!m.square()) fail(at(at(where, "factors"), i), "factor must be square");
        out.factors.push_back(std::move(m));
    }
    return out;
}

EndoInput endo_input_from_json(const Json& j, const std::string& where) {
    Json items = j;
    if (j.is_object()) items = Json::array({j});
    if (!items.is_array() || items.empty()) fail(where, "expected a non-empty array of endomorphisms");
    EndoInput out;
    const bool simple = items[0].is_object() && items[0].contains("factors");
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto w = at(where, i);
        if (simple != (items[i].is_object() && items[i].contains("factors"))) {
            fail(w, "mixes factored and dense endomorphisms");
        }
        if (simple) {
            out.simple.push_back(simple_endo_from_json(items[i], w));
            if (out.simple.back().dims() != out.simple.front().dims()) fail(w, "dimension vector differs from item 0");
        } else {
            out.tuple.members.push_back(endomorphism_from_json(items[i], w));
            if (out.tuple.members.back().dims != out.tuple.members.front().dims) {
                fail(at(w, "dims"), "dimension vector differs from item 0");
            }
        }
    }
    out.all_simple = simple;
    if (simple) out.tuple = kron_expand(std::span<const SimpleEndo>(out.simple));
    else out.tuple.dims = out.tuple.members.front().dims;
    return out;
}

Json to_json(const PowerSeries& s) { return Json{{"N", s.order()}, {"coeffs", string_list(s.coeffs)}}; }

Json to_json(const RationalFunction& f) {
    return Json{{"num", string_list(f.num)}, {"den", string_list(f.den)}};
}

Json to_json(const Reconstruction& r) {
    Json out{{"status", r.conclusive ? "ok" : "inconclusive"}, {"recurrence_order", r.recurrence_order}};
    if (r.conclusive) {
        out["rational"] = to_json(r.function);
        out["numerator_is_one"] = r.function.num == Polynomial{Scalar(1)};
        out["text"] = "(" + poly_to_string(r.function.num) + ") / (" + poly_to_string(r.function.den) + ")";
    } else {
        out["reason"] = r.reason;
    }
    return out;
}

Json to_json(const PoleCheck& p) {
    Json out{{"ok", p.ok}, {"cyclotomic_multiplicity", p.cyclotomic_multiplicity}};
    if (p.ok) out["exponents"] = p.exponents;
    else out["residual"] = string_list(p.residual);
    return out;
}

Json to_json(const BoundReport& b) {
    Json out{{"segre", b.segre}};
    out["final"] = b.final_m1 ? Json(*b.final_m1) : Json(nullptr);
    out["small_dim"] = b.small_dim ? Json(*b.small_dim) : Json(nullptr);
    out["girth"] = b.girth;
    out["girth_small_dim"] = b.girth_small_dim ? Json(*b.girth_small_dim) : Json(nullptr);
    return out;
}

Json to_json(const EmpiricalBound& e) {
    Json steps = Json::array();
    for (const auto& s : e.steps) {
        steps.push_back(Json{{"degree", s.degree},
                             {"candidates", s.candidates},
                             {"decomposable", s.decomposable},
                             {"span_rank", s.span_rank},
                             {"product_rank", s.product_rank},
                             {"samples", s.samples},
                             {"new_generators", s.new_generators}});
    }
    return Json{{"dims", e.dims.dims()},
                {"seed", e.seed},
                {"steps", steps},
                {"largest_new_degree", e.largest_new_degree ? Json(*e.largest_new_degree) : Json(nullptr)}};
}

Json to_json(const GenerationReport& r) {
    return Json{{"alpha", r.alpha.degrees}, {"d", r.dims.dims()},  {"m", r.m},
                {"oracle_dim", r.oracle_dim}, {"span_dim", r.span_dim}, {"match", r.match},
                {"seed", r.seed},           {"samples", r.samples}, {"candidates", r.candidates}};
}

Json to_json(const ContractionPlan& p) {
    Json steps = Json::array();
    for (const auto& s : p.steps) {
        Json step{{"left", s.left}};
        step["right"] = s.right == ContractionStep::kNone ? Json(nullptr) : Json(s.right);
        step["result"] = s.result;
        step["cover"] = s.cover;
        step["open_edges"] = s.open_edges;
        step["cost"] = s.cost;
        step["result_size"] = s.result_size;
        steps.push_back(std::move(step));
    }
    return Json{{"dims", p.dims},
                {"leaves", p.leaves},
                {"steps", steps},
                {"total_cost", p.total_cost},
                {"peak_size", p.peak_size}};
}

}  // namespace localinv
