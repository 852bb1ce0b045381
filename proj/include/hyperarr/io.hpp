#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperarr/arrangement.hpp"
#include "hyperarr/freeness.hpp"
#include "hyperarr/polynomial.hpp"

namespace hyperarr {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline json cyc_to_json(const Cyc& c) {
    json coeffs = json::array();
    for (const Rat& r : c.coeffs()) coeffs.push_back(rat_to_string(r));
    return json{{"order", c.order()}, {"coeffs", std::move(coeffs)}};
}

inline Cyc cyc_from_json(const json& j, unsigned expected_order, const std::string& where) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw io_error(where + ": entry must be an object with \"order\" and \"coeffs\"");
    if (!j["order"].is_number_unsigned())
        throw io_error(where + ": \"order\" must be a positive integer");
    const unsigned order = j["order"].get<unsigned>();
    if (order != expected_order)
        throw io_error(where + ": entry order " + std::to_string(order) +
                       " does not match the arrangement order " + std::to_string(expected_order));
    const json& coeffs = j["coeffs"];
    const std::size_t phi = totient(order);
    if (!coeffs.is_array() || coeffs.size() != phi)
        throw io_error(where + ": expected " + std::to_string(phi) + " coefficients for order " +
                       std::to_string(order));
    std::vector<Rat> values;
    values.reserve(phi);
    for (const json& entry : coeffs) {
        if (!entry.is_string()) throw io_error(where + ": coefficients must be \"p/q\" strings");
        values.push_back(rat_from_string(entry.get<std::string>()));
    }
    return Cyc(order, std::move(values));
}

inline json int_to_json(const Int& n) { return n.get_str(); }

inline Int int_from_json(const json& j, const std::string& where) {
    if (!j.is_string()) throw io_error(where + ": expected a decimal integer string");
    const std::string text = j.get<std::string>();
    const std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
    if (text.size() == start || text.find_first_not_of("0123456789", start) != std::string::npos)
        throw io_error(where + ": '" + text + "' is not a decimal integer");
    return Int(text);
}

// ---------------------------------------------------------------------------
// Polynomials: ascending coefficient array of decimal strings
// ---------------------------------------------------------------------------

inline json charpoly_to_json(const CharPoly& p) {
    json coeffs = json::array();
    for (const Int& c : p.coeffs) coeffs.push_back(int_to_json(c));
    return coeffs;
}

inline CharPoly charpoly_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw io_error(where + ": expected a coefficient array");
    std::vector<Int> coeffs;
    coeffs.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        coeffs.push_back(int_from_json(j[i], where + ", coefficient " + std::to_string(i)));
    if (!coeffs.empty() && coeffs.back() == 0)
        throw io_error(where + ": leading coefficient must be nonzero");
    return CharPoly{std::move(coeffs)};
}

// ---------------------------------------------------------------------------
// Arrangements
// ---------------------------------------------------------------------------

inline json arrangement_to_json(const Arrangement& a) {
    json rows = json::array();
    for (std::size_t h = 0; h < a.size(); ++h) {
        json row = json::array();
        for (const Cyc& c : a[h].normal) row.push_back(cyc_to_json(c));
        rows.push_back(std::move(row));
    }
    return json{{"order", a.order()}, {"dim", a.dim()}, {"hyperplanes", std::move(rows)}};
}

inline Arrangement arrangement_from_json(const json& j) {
    if (!j.is_object()) throw io_error("arrangement: expected a JSON object");
    for (const char* key : {"order", "dim", "hyperplanes"})
        if (!j.contains(key)) throw io_error(std::string("arrangement: missing field \"") + key + "\"");
    if (!j["order"].is_number_unsigned() || j["order"].get<unsigned>() == 0)
        throw io_error("arrangement: \"order\" must be a positive integer");
    if (!j["dim"].is_number_unsigned())
        throw io_error("arrangement: \"dim\" must be a nonnegative integer");
    const unsigned order = j["order"].get<unsigned>();
    const std::size_t dim = j["dim"].get<std::size_t>();
    const json& rows = j["hyperplanes"];
    if (!rows.is_array()) throw io_error("arrangement: \"hyperplanes\" must be an array");
    std::vector<CycVec> normals;
    normals.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string where = "hyperplane row " + std::to_string(r);
        const json& row = rows[r];
        if (!row.is_array() || row.size() != dim)
            throw io_error(where + ": expected " + std::to_string(dim) + " entries");
        CycVec normal;
        normal.reserve(dim);
        bool all_zero = true;
        for (std::size_t c = 0; c < row.size(); ++c) {
            Cyc value = cyc_from_json(row[c], order, where + ", entry " + std::to_string(c));
            all_zero = all_zero && value.is_zero();
            normal.push_back(std::move(value));
        }
        if (all_zero) throw io_error(where + ": zero normal vector");
        normals.push_back(std::move(normal));
    }
    return Arrangement::make(order, dim, normals);
}

inline Arrangement load_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw io_error("'" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return arrangement_from_json(j);
    } catch (const io_error& e) {
        throw io_error("'" + path + "': " + e.what());
    }
}

inline void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw io_error("failed to write '" + path + "'");
}

inline void save_arrangement(const Arrangement& a, const std::string& path) {
    write_json_file(arrangement_to_json(a), path);
}

// ---------------------------------------------------------------------------
// Flats
// ---------------------------------------------------------------------------

inline json flat_to_json(const Flat& x) {
    json hyperplanes = json::array();
    for (std::size_t h : x.incidence.indices()) hyperplanes.push_back(h);
    return json{{"hyperplanes", std::move(hyperplanes)}, {"dim", x.dim}};
}

// ---------------------------------------------------------------------------
// Certificates. Division certificates keep a snapshot table so the replayed
// arrangements appear once each; induction certificates keep a node table
// with child indices, which also serializes shared subtrees once.
// ---------------------------------------------------------------------------

inline json certificate_to_json(const DivisionCertificate& cert) {
    json snapshots = json::array();
    std::unordered_map<std::string, std::size_t> seen;
    auto snapshot_id = [&](const Arrangement& a) {
        auto [it, fresh] = seen.emplace(a.canonical_key(), snapshots.size());
        if (fresh) snapshots.push_back(arrangement_to_json(a));
        return it->second;
    };
    json steps = json::array();
    for (const DivisionStep& step : cert.steps) {
        const std::size_t id = snapshot_id(step.arrangement);
        steps.push_back(json{{"snapshot", id},
                             {"hyperplane", step.hyperplane},
                             {"chi_before", charpoly_to_json(step.chi_before)},
                             {"chi_after", charpoly_to_json(step.chi_after)}});
    }
    const std::size_t terminal = snapshot_id(cert.terminal);
    return json{{"type", "division"},
                {"snapshots", std::move(snapshots)},
                {"steps", std::move(steps)},
                {"terminal", terminal}};
}

inline json certificate_to_json(const InductionCertificate& root) {
    if (!root) throw usage_error("cannot serialize an empty induction certificate");
    json nodes = json::array();
    std::unordered_map<const InductionNode*, std::size_t> index;
    auto emit = [&](auto&& self, const InductionCertificate& node) -> std::size_t {
        auto it = index.find(node.get());
        if (it != index.end()) return it->second;
        json entry;
        entry["arrangement"] = arrangement_to_json(node->arrangement);
        if (node->step) {
            entry["hyperplane"] = node->step->hyperplane;
            entry["exp_deleted"] = node->step->exp_deleted;
            entry["exp_restricted"] = node->step->exp_restricted;
            entry["deleted"] = self(self, node->step->deleted);
            entry["restricted"] = self(self, node->step->restricted);
        }
        const std::size_t id = nodes.size();
        nodes.push_back(std::move(entry));
        index.emplace(node.get(), id);
        return id;
    };
    const std::size_t root_id = emit(emit, root);
    return json{{"type", "induction"}, {"nodes", std::move(nodes)}, {"root", root_id}};
}

/// A deserialized certificate of either kind.
struct LoadedCertificate {
    std::optional<DivisionCertificate> division;
    InductionCertificate induction; // null unless type == induction
};

namespace detail {

inline std::size_t index_from_json(const json& j, std::size_t limit, const std::string& where) {
    if (!j.is_number_unsigned()) throw io_error(where + ": expected a nonnegative index");
    const std::size_t value = j.get<std::size_t>();
    if (value >= limit) throw io_error(where + ": index " + std::to_string(value) + " out of range");
    return value;
}

inline ExponentMultiset exponents_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw io_error(where + ": expected an array of integers");
    ExponentMultiset exp;
    exp.reserve(j.size());
    for (const json& entry : j) {
        if (!entry.is_number_integer()) throw io_error(where + ": expected an array of integers");
        exp.push_back(entry.get<long>());
    }
    return exp;
}

} // namespace detail

inline LoadedCertificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw io_error("certificate: expected an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    LoadedCertificate loaded;
    if (type == "division") {
        for (const char* key : {"snapshots", "steps", "terminal"})
            if (!j.contains(key)) throw io_error(std::string("certificate: missing field \"") + key + "\"");
        if (!j["snapshots"].is_array() || !j["steps"].is_array())
            throw io_error("certificate: \"snapshots\" and \"steps\" must be arrays");
        std::vector<Arrangement> snapshots;
        for (std::size_t i = 0; i < j["snapshots"].size(); ++i) {
            try {
                snapshots.push_back(arrangement_from_json(j["snapshots"][i]));
            } catch (const io_error& e) {
                throw io_error("certificate snapshot " + std::to_string(i) + ": " + e.what());
            }
        }
        DivisionCertificate cert;
        for (std::size_t i = 0; i < j["steps"].size(); ++i) {
            const json& step = j["steps"][i];
            const std::string where = "certificate step " + std::to_string(i);
            if (!step.is_object()) throw io_error(where + ": expected an object");
            for (const char* key : {"snapshot", "hyperplane", "chi_before", "chi_after"})
                if (!step.contains(key)) throw io_error(where + ": missing field \"" + std::string(key) + "\"");
            const std::size_t snap = detail::index_from_json(step["snapshot"], snapshots.size(), where);
            if (!step["hyperplane"].is_number_unsigned())
                throw io_error(where + ": \"hyperplane\" must be a nonnegative index");
            cert.steps.push_back(DivisionStep{
                snapshots[snap], step["hyperplane"].get<std::size_t>(),
                charpoly_from_json(step["chi_before"], where + ", chi_before"),
                charpoly_from_json(step["chi_after"], where + ", chi_after")});
        }
        cert.terminal =
            snapshots[detail::index_from_json(j["terminal"], snapshots.size(), "certificate terminal")];
        loaded.division = std::move(cert);
        return loaded;
    }
    if (type == "induction") {
        for (const char* key : {"nodes", "root"})
            if (!j.contains(key)) throw io_error(std::string("certificate: missing field \"") + key + "\"");
        const json& nodes = j["nodes"];
        if (!nodes.is_array()) throw io_error("certificate: \"nodes\" must be an array");
        std::vector<InductionCertificate> built(nodes.size());
        std::vector<int> state(nodes.size(), 0); // 0 untouched, 1 in progress, 2 done
        auto build = [&](auto&& self, std::size_t id) -> InductionCertificate {
            if (state[id] == 2) return built[id];
            if (state[id] == 1) throw io_error("certificate: node table contains a cycle");
            state[id] = 1;
            const json& entry = nodes[id];
            const std::string where = "certificate node " + std::to_string(id);
            if (!entry.is_object() || !entry.contains("arrangement"))
                throw io_error(where + ": expected an object with \"arrangement\"");
            InductionNode node;
            try {
                node.arrangement = arrangement_from_json(entry["arrangement"]);
            } catch (const io_error& e) {
                throw io_error(where + ": " + e.what());
            }
            if (entry.contains("hyperplane")) {
                for (const char* key : {"exp_deleted", "exp_restricted", "deleted", "restricted"})
                    if (!entry.contains(key))
                        throw io_error(where + ": missing field \"" + std::string(key) + "\"");
                if (!entry["hyperplane"].is_number_unsigned())
                    throw io_error(where + ": \"hyperplane\" must be a nonnegative index");
                InductionNode::Step step;
                step.hyperplane = entry["hyperplane"].get<std::size_t>();
                step.exp_deleted = detail::exponents_from_json(entry["exp_deleted"], where + ", exp_deleted");
                step.exp_restricted =
                    detail::exponents_from_json(entry["exp_restricted"], where + ", exp_restricted");
                step.deleted = self(self, detail::index_from_json(entry["deleted"], nodes.size(), where));
                step.restricted =
                    self(self, detail::index_from_json(entry["restricted"], nodes.size(), where));
                node.step = std::move(step);
            }
            built[id] = std::make_shared<InductionNode>(std::move(node));
            state[id] = 2;
            return built[id];
        };
        loaded.induction = build(build, detail::index_from_json(j["root"], nodes.size(), "certificate root"));
        return loaded;
    }
    throw io_error("certificate: unknown type '" + type + "'");
}

inline LoadedCertificate load_certificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw io_error("'" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return certificate_from_json(j);
    } catch (const io_error& e) {
        throw io_error("'" + path + "': " + e.what());
    }
}

inline void save_certificate(const json& cert, const std::string& path) { write_json_file(cert, path); }

} // namespace hyperarr
