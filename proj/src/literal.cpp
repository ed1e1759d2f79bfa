#include "ckg/literal.hpp"

#include <cmath>

#include "ckg/errors.hpp"

namespace ckg {

namespace {

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(what) + ": value is not finite");
    return x;
}

cplx entry_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("matrix entry: expected [re, im]");
    return {finite_number(j[0], "matrix entry"), finite_number(j[1], "matrix entry")};
}

Json entry_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::size_t count_from_json(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(std::string(what) + ": expected a nonnegative integer");
    }
    return j.get<std::size_t>();
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a nonempty list of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix: rows must be nonempty lists");
    const std::size_t cols = j[0].size();
    std::vector<cplx> entries;
    entries.reserve(rows * cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) throw ParseError("matrix: ragged rows");
        for (const auto& e : row) entries.push_back(entry_from_json(e));
    }
    return {rows, cols, std::move(entries)};
}

Json to_json(const CVector& v) {
    Json out = Json::array();
    for (const cplx& z : v) out.push_back(entry_to_json(z));
    return out;
}

CVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("vector: expected a list of [re, im] entries");
    CVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(entry_from_json(e));
    return v;
}

Json to_json(const DiscreteMeasureSpace& sp) {
    Json out = Json::array();
    for (const auto& a : sp.atoms) {
        Json atom = {{"id", a.id}, {"weight", a.weight}, {"fiber_dim", a.fiber_dim}};
        if (!a.partition.empty()) atom["partition"] = a.partition;
        out.push_back(std::move(atom));
    }
    return out;
}

DiscreteMeasureSpace space_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("space: expected a list of atoms");
    DiscreteMeasureSpace sp;
    for (const auto& item : j) {
        const Json& id = member(item, "id");
        if (!id.is_string()) throw ParseError("space: atom id must be a string");
        Atom a;
        a.id = id.get<std::string>();
        a.weight = finite_number(member(item, "weight"), "atom weight");
        a.fiber_dim = count_from_json(member(item, "fiber_dim"), "fiber_dim");
        if (item.contains("partition")) {
            if (!item["partition"].is_string()) throw ParseError("space: partition must be a string");
            a.partition = item["partition"].get<std::string>();
        }
        sp.atoms.push_back(std::move(a));
    }
    return sp;
}

Json to_json(const OperatorFamily& fam) {
    Json ops = Json::array();
    for (const auto& op : fam.ops()) ops.push_back(to_json(op));
    return {{"ambient_dim", fam.ambient_dim()}, {"space", to_json(fam.space())}, {"ops", std::move(ops)}};
}

OperatorFamily family_from_json(const Json& j) {
    const std::size_t n = count_from_json(member(j, "ambient_dim"), "ambient_dim");
    DiscreteMeasureSpace sp = space_from_json(member(j, "space"));
    const Json& ops_json = member(j, "ops");
    if (!ops_json.is_array()) throw ParseError("family: ops must be a list of matrices");
    std::vector<ComplexMatrix> ops;
    for (const auto& op : ops_json) ops.push_back(matrix_from_json(op));
    try {
        return {std::move(sp), std::move(ops), n};
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        throw InvalidConfig(std::string("family: ") + e.what());
    }
}

Json extended_real(double x) {
    if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
    return x;
}

double extended_real_from_json(const Json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInfinity;
        if (s == "-inf") return -kInfinity;
        throw ParseError("extended real: unknown string '" + s + "'");
    }
    return finite_number(j, "extended real");
}

Json to_json(const FrameBounds& b) { return Json::array({extended_real(b.lower), extended_real(b.upper)}); }

FrameBounds bounds_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("bounds: expected [lower, upper]");
    return {extended_real_from_json(j[0]), extended_real_from_json(j[1])};
}

Json to_json(const FrameReport& r) {
    return {{"bounds", to_json(r.bounds)},
            {"claimed", to_json(r.claimed)},
            {"is_bessel", r.is_bessel},
            {"is_ckg_frame", r.is_ckg_frame},
            {"is_tight", r.is_tight},
            {"is_parseval", r.is_parseval},
            {"diagnostics", r.diagnostics}};
}

Json to_json(const DualPair& pair) {
    return {{"primary", to_json(pair.primary)},
            {"dual", to_json(pair.dual)},
            {"reproduced", to_json(pair.reproduced)},
            {"residual", pair.residual}};
}

Json to_json(const PerturbationReport& r) {
    return {{"predicted", to_json(r.predicted)},
            {"empirical", to_json(r.empirical)},
            {"slack", extended_real(r.max_condition_slack)},
            {"samples", r.samples},
            {"seed", r.seed},
            {"success", r.success},
            {"diagnostics", r.diagnostics}};
}

}  // namespace ckg
