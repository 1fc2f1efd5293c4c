#include "qstab/json_io.hpp"

namespace qstab {

Json json_rat(const Rat& r) { return rat_to_string(r); }

Json json_phase(const PhaseValue& p) { return phase_to_string(p); }

Json json_dims(const DimVec& d) {
    Json a = Json::array();
    for (int x : d) a.push_back(x);
    return a;
}

Json json_rats(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(json_rat(r));
    return a;
}

Json json_module_set(const ModuleUniverse& U, const ModuleSet& s) {
    Json a = Json::array();
    for (int id : s.ids) a.push_back(U.cls(id).name);
    return a;
}

Json json_chain(const ModuleUniverse& U, const std::vector<ChainEntry>& chain) {
    Json phases = Json::array(), classes = Json::array();
    for (const auto& entry : chain) {
        phases.push_back(json_phase(entry.phase));
        classes.push_back(json_module_set(U, entry.torsion));
    }
    Json out;
    out["phases"] = phases;
    out["classes"] = classes;
    return out;
}

Json json_mgs(const ModuleUniverse& U, const MGSReport& report) {
    Json out = json_chain(U, report.chain);
    out["mgs"] = report.mgs;
    Json certs = Json::array();
    for (const auto& c : report.certificates) certs.push_back(c);
    out["certificates"] = certs;
    return out;
}

Json json_walls(const ModuleUniverse& U, const std::vector<Wall>& walls) {
    Json arr = Json::array();
    for (const auto& w : walls) {
        Json jw;
        jw["equality"] = json_dims(w.cone.equality);
        Json names = Json::array();
        for (int id : w.class_ids) names.push_back(U.cls(id).name);
        jw["classes"] = names;
        jw["multiplicity"] = static_cast<int>(w.class_ids.size());
        if (w.cone.ambient == 2) {
            auto rays = wall_rays_rank2(w.cone);
            jw["kind"] = rays.size() == 2 ? "line" : "ray";
            Json jr = Json::array();
            for (const auto& r : rays) {
                Json pt = Json::array();
                pt.push_back(r.first);
                pt.push_back(r.second);
                jr.push_back(pt);
            }
            jw["rays"] = jr;
        }
        arr.push_back(jw);
    }
    Json out;
    out["count"] = static_cast<int>(walls.size());
    out["walls"] = arr;
    return out;
}

Json json_chambers(const std::vector<Chamber>& chambers) {
    Json arr = Json::array();
    for (const auto& c : chambers) {
        Json jc;
        jc["from_ray"] = json_rats(c.from_ray);
        jc["to_ray"] = json_rats(c.to_ray);
        jc["sample"] = json_rats(c.sample);
        arr.push_back(jc);
    }
    Json out;
    out["count"] = static_cast<int>(chambers.size());
    out["chambers"] = arr;
    return out;
}

Json json_path_report(const ModuleUniverse& U, const PathReport& report) {
    Json out;
    out["valid"] = report.valid;
    Json phases = Json::object();
    for (const auto& crossing : report.crossings)
        for (int id : crossing.class_ids)
            phases[U.cls(id).name] = json_rat(crossing.t);
    out["phases"] = phases;
    Json crossings = Json::array();
    for (const auto& crossing : report.crossings) {
        Json jc;
        jc["t"] = json_rat(crossing.t);
        Json names = Json::array();
        for (int id : crossing.class_ids) names.push_back(U.cls(id).name);
        jc["classes"] = names;
        crossings.push_back(jc);
    }
    out["crossings"] = crossings;
    Json viol = Json::array();
    for (const auto& v : report.violations) viol.push_back(v);
    out["violations"] = viol;
    out["dgeneric"] = report.dgeneric;
    Json notes = Json::array();
    for (const auto& n : report.dgeneric_notes) notes.push_back(n);
    out["dgeneric_notes"] = notes;
    return out;
}

Json json_error(const Error& e) {
    Json out;
    Json inner;
    inner["kind"] = e.kind();
    inner["message"] = e.what();
    out["error"] = inner;
    return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace qstab
