#pragma once

// System file (de)serialization and report emission. Single-file JSON
// systems, schema "mik/1"; reals travel as decimal strings to avoid binary
// float loss; output is canonical and byte-stable.

#include "mik/certificate.hpp"
#include "mik/ellipsoid.hpp"

#include <json.hpp>

#include <sstream>

namespace mik {

using json = nlohmann::ordered_json;

inline std::string real_to_string(const real_t& v) { return v.str(); }

inline real_t real_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return real_t(j.get<std::string>());
        if (j.is_number_integer()) return real_t(j.get<long long>());
        if (j.is_number_float()) {
            std::ostringstream os;
            os.precision(17);
            os << j.get<double>();
            return real_t(os.str());
        }
    } catch (const std::exception&) {
        throw parse_error(where + ": malformed real value");
    }
    throw parse_error(where + ": expected a number or decimal string");
}

inline json angle_to_json(const Angle& a) {
    json j;
    if (a.is_rational()) {
        j["kind"] = "rational_pi";
        j["num"] = a.num();
        j["den"] = a.den();
    } else {
        j["kind"] = "irrational";
        j["value"] = real_to_string(a.value());
    }
    return j;
}

inline Angle angle_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw parse_error(where + ": angle must be an object with a \"kind\" field");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "rational_pi")
            return Angle::rational_pi(j.at("num").get<long long>(), j.at("den").get<long long>());
        if (kind == "irrational")
            return Angle::irrational(real_from_json(j.at("value"), where + ".value"));
    } catch (const domain_error& e) {
        throw parse_error(where + ": " + e.what());
    } catch (const json::exception&) {
        throw parse_error(where + ": malformed angle");
    }
    throw parse_error(where + ": unknown angle kind '" + kind + "'");
}

inline json block_to_json(const NormalFormBlock& b) {
    json j;
    if (b.is_n1()) {
        j["type"] = "N1";
        j["lambda"] = b.as_n1().lambda;
        j["b"] = real_to_string(b.as_n1().b);
    } else if (b.is_d()) {
        j["type"] = "D";
        j["lambda"] = real_to_string(b.as_d().lambda);
    } else if (b.is_r()) {
        j["type"] = "R";
        j["theta"] = angle_to_json(b.as_r().theta);
    } else {
        j["type"] = "N2";
        j["theta"] = angle_to_json(b.as_n2().theta);
        json arr = json::array();
        for (const auto& v : b.as_n2().B) arr.push_back(real_to_string(v));
        j["B"] = arr;
    }
    return j;
}

inline NormalFormBlock block_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type"))
        throw parse_error(where + ": block must be an object with a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    try {
        if (type == "N1")
            return NormalFormBlock::n1(j.at("lambda").get<int>(),
                                       real_from_json(j.at("b"), where + ".b"));
        if (type == "D")
            return NormalFormBlock::d(real_from_json(j.at("lambda"), where + ".lambda"));
        if (type == "R")
            return NormalFormBlock::r(angle_from_json(j.at("theta"), where + ".theta"));
        if (type == "N2") {
            const json& arr = j.at("B");
            if (!arr.is_array() || arr.size() != 4)
                throw parse_error(where + ".B: expected four entries");
            std::array<real_t, 4> B;
            for (int i = 0; i < 4; ++i) B[i] = real_from_json(arr[i], where + ".B");
            return NormalFormBlock::n2(angle_from_json(j.at("theta"), where + ".theta"), B);
        }
    } catch (const domain_error& e) {
        throw parse_error(where + ": " + e.what());
    } catch (const json::exception& e) {
        throw parse_error(where + ": " + e.what());
    }
    throw parse_error(where + ": unknown block type '" + type + "'");
}

struct SystemFile {
    int n = 0;
    std::string provenance;
    std::vector<OrbitRecord> records;
};

inline SystemFile parse_system(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("system: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("system: top level must be an object");
    if (j.contains("schema") && j.at("schema").get<std::string>() != "mik/1")
        throw parse_error("system: unsupported schema '" +
                          j.at("schema").get<std::string>() + "'");
    SystemFile out;
    try {
        out.n = j.at("n").get<int>();
    } catch (const json::exception&) {
        throw parse_error("system: missing integer field \"n\"");
    }
    if (j.contains("provenance")) out.provenance = j.at("provenance").get<std::string>();
    if (!j.contains("orbits") || !j.at("orbits").is_array())
        throw parse_error("system: missing \"orbits\" array");
    int idx = 0;
    for (const auto& jo : j.at("orbits")) {
        std::string where = "orbits[" + std::to_string(idx) + "]";
        std::string label;
        try {
            label = jo.at("label").get<std::string>();
        } catch (const json::exception&) {
            throw parse_error(where + ": missing \"label\"");
        }
        long long i1;
        try {
            i1 = jo.at("i1").get<long long>();
        } catch (const json::exception&) {
            throw parse_error(where + " ('" + label + "'): missing integer \"i1\"");
        }
        if (!jo.contains("blocks") || !jo.at("blocks").is_array())
            throw parse_error(where + " ('" + label + "'): missing \"blocks\" array");
        std::vector<NormalFormBlock> blocks;
        int bidx = 0;
        for (const auto& jb : jo.at("blocks")) {
            blocks.push_back(block_from_json(jb, where + ".blocks[" + std::to_string(bidx) + "]"));
            ++bidx;
        }
        std::map<std::string, std::string> meta;
        if (jo.contains("metadata"))
            for (auto it = jo.at("metadata").begin(); it != jo.at("metadata").end(); ++it)
                meta[it.key()] = it.value().is_string() ? it.value().get<std::string>()
                                                        : it.value().dump();
        try {
            out.records.emplace_back(label, out.n, i1,
                                     NormalFormDecomposition(std::move(blocks), out.n),
                                     std::move(meta));
        } catch (const domain_error& e) {
            throw parse_error(where + " ('" + label + "'): " + e.what());
        }
        ++idx;
    }
    return out;
}

inline std::string emit_system(const SystemFile& sys) {
    json j;
    j["schema"] = "mik/1";
    j["n"] = sys.n;
    if (!sys.provenance.empty()) j["provenance"] = sys.provenance;
    json orbits = json::array();
    for (const auto& r : sys.records) {
        json jo;
        jo["label"] = r.label;
        jo["i1"] = r.i1;
        json blocks = json::array();
        for (const auto& b : r.decomp.blocks()) blocks.push_back(block_to_json(b));
        jo["blocks"] = blocks;
        if (!r.metadata.empty()) {
            json meta;
            for (const auto& [k, v] : r.metadata) meta[k] = v;
            jo["metadata"] = meta;
        }
        orbits.push_back(jo);
    }
    j["orbits"] = orbits;
    return j.dump(2) + "\n";
}

// omega spec: "1" | "-1" | "pi:p/q" (theta/pi = p/q) | "rad:<decimal>"
inline CirclePoint parse_omega(const std::string& s) {
    if (s == "1") return CirclePoint::one();
    if (s == "-1") return CirclePoint::minus_one();
    if (s.rfind("pi:", 0) == 0) {
        auto rest = s.substr(3);
        auto slash = rest.find('/');
        try {
            long long p = std::stoll(rest.substr(0, slash));
            long long q = slash == std::string::npos ? 1 : std::stoll(rest.substr(slash + 1));
            return CirclePoint::at(Angle::rational_pi(p, q));
        } catch (const std::exception& e) {
            throw parse_error(std::string("omega: ") + e.what());
        }
    }
    if (s.rfind("rad:", 0) == 0) {
        try {
            return CirclePoint::at(Angle::irrational(real_t(s.substr(4))));
        } catch (const std::exception& e) {
            throw parse_error(std::string("omega: ") + e.what());
        }
    }
    throw parse_error("omega: expected 1, -1, pi:p/q or rad:<decimal>, got '" + s + "'");
}

inline json tuple_to_json(const JumpTuple& t) {
    json j;
    j["N"] = t.N;
    j["m"] = t.m;
    j["chi"] = t.chi;
    j["M"] = t.M_common;
    j["eps"] = real_to_string(t.eps);
    j["delta"] = t.delta;
    return j;
}

inline json verify_report_to_json(const VerifyReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["m_checked"] = rep.m_checked;
    json fails = json::array();
    for (const auto& f : rep.failures) {
        json jf;
        jf["k"] = f.k;
        jf["m"] = f.m;
        jf["identity"] = f.identity;
        jf["lhs"] = f.lhs;
        jf["rhs"] = f.rhs;
        fails.push_back(jf);
    }
    j["failures"] = fails;
    json offs = json::array();
    for (const auto& o : rep.offsets) {
        json jo;
        jo["delta"] = o.delta;
        jo["delta_fine"] = o.delta_fine;
        jo["window_stable"] = o.window_stable;
        jo["identity_consistent"] = o.identity_consistent;
        offs.push_back(jo);
    }
    j["offsets"] = offs;
    return j;
}

inline json certificate_to_json(const CertificateReport& rep) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["parity_case"] = rep.parity_case;
    j["reason"] = rep.reason;
    j["n"] = rep.n;
    j["q"] = rep.q;
    json hyp = json::array();
    for (const auto& h : rep.hypotheses.orbits) {
        json jh;
        jh["label"] = h.label;
        jh["mean_positive"] = h.mean_positive;
        jh["nondegenerate"] = h.nondegenerate;
        jh["index_exclusion"] = h.index_exclusion;
        if (h.offending_m) {
            jh["offending_m"] = *h.offending_m;
            jh["offending_index"] = h.offending_index;
        }
        hyp.push_back(jh);
    }
    j["hypotheses"] = hyp;
    j["residual"] = real_to_string(rep.residual);
    j["mbar"] = rep.mbar_used;
    j["M"] = rep.M_common;
    j["eps"] = real_to_string(rep.eps_used);
    if (rep.tuple) j["tuple"] = tuple_to_json(*rep.tuple);
    if (rep.conjugate) j["conjugate"] = tuple_to_json(*rep.conjugate);
    j["weight_identity_ok"] = rep.weight_identity_ok;
    auto counts = [&](const ParityCounts& c) {
        json jc;
        jc["plus_even"] = c.plus_even;
        jc["plus_odd"] = c.plus_odd;
        jc["minus_even"] = c.minus_even;
        jc["minus_odd"] = c.minus_odd;
        return jc;
    };
    j["counts"] = counts(rep.counts);
    j["conjugate_counts"] = counts(rep.conj_counts);
    j["m_set_symmetry_ok"] = rep.m_set_symmetry_ok;
    j["swap_ok"] = rep.swap_ok;
    j["window_bounds_ok"] = rep.window_bounds_ok;
    j["alternating_sum"] = rep.alternating_sum.str();
    j["alternating_bound"] = rep.alternating_bound.str();
    j["alternating_equality_ok"] = rep.alternating_equality_ok;
    j["inequality_ok"] = rep.inequality_ok;
    j["classifications"] = rep.classifications;
    json wits = json::array();
    for (const auto& w : rep.nonhyperbolic_witnesses) {
        json jw;
        jw["label"] = w.label;
        jw["viterbo_2mk"] = w.viterbo_2mk;
        jw["class"] = to_string(w.cls);
        jw["parity_constant"] = w.parity_constant;
        wits.push_back(jw);
    }
    j["nonhyperbolic_witnesses"] = wits;
    if (rep.parity_case == "n-odd") {
        j["middle_degree_count"] = rep.middle_degree_count;
        j["middle_degree_witnesses"] = rep.middle_degree_witnesses;
    }
    j["required_witnesses"] = rep.required_witnesses;
    j["bound_met"] = rep.bound_met;
    return j;
}

}  // namespace mik
