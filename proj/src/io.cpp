#include "descent/io.hpp"

#include <fstream>

namespace descent {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

Rational json_rational(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
    throw InputError("expected a rational, got " + j.dump());
}

Integer json_integer(const Json& j) {
    if (j.is_string()) return parse_integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    throw InputError("expected an integer, got " + j.dump());
}

QVector json_qvector(const Json& j) {
    if (!j.is_array()) throw InputError("expected a vector, got " + j.dump());
    QVector v;
    for (const auto& x : j) v.push_back(json_rational(x));
    return v;
}

ZVector json_zvector(const Json& j) {
    if (!j.is_array()) throw InputError("expected a vector, got " + j.dump());
    ZVector v;
    for (const auto& x : j) v.push_back(json_integer(x));
    return v;
}

std::vector<ZVector> json_zvectors(const Json& j, const std::string& key) {
    const Json* list = &j;
    if (j.is_object()) {
        if (!j.contains(key)) throw InputError("missing key \"" + key + "\"");
        list = &j.at(key);
    }
    if (!list->is_array()) throw InputError("expected a list of vectors");
    std::vector<ZVector> out;
    for (const auto& x : *list) out.push_back(json_zvector(x));
    if (out.empty()) throw InputError("empty vector list");
    const std::size_t n = out.front().size();
    for (const auto& v : out)
        if (v.size() != n) throw InputError("vectors of different lengths");
    return out;
}

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json to_json(const QVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const ZVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const Point& p) {
    Json a = Json::array();
    for (auto x : p) a.push_back(x);
    return a;
}

Polytope load_polytope(const Json& j) {
    if (!j.is_object() || !j.contains("vertices")) throw InputError("polytope file needs \"vertices\"");
    std::vector<QVector> pts;
    for (const auto& v : j.at("vertices")) pts.push_back(json_qvector(v));
    if (pts.empty()) throw InputError("polytope has no vertices");
    for (const auto& p : pts)
        if (p.size() != pts.front().size()) throw InputError("vertices of different dimensions");
    return convex_hull(pts);
}

Json polytope_json(const Polytope& p) {
    Json j;
    j["dim"] = p.dim;
    j["vertices"] = Json::array();
    for (const auto& v : p.vertices) j["vertices"].push_back(to_json(v));
    j["facets"] = Json::array();
    for (const auto& f : p.facets) j["facets"].push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    j["equations"] = Json::array();
    for (const auto& f : p.equations)
        j["equations"].push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    return j;
}

Json cone_json(const Cone& c) {
    Json j;
    j["dim"] = c.dim;
    j["rays"] = Json::array();
    for (const auto& r : c.rays) j["rays"].push_back(to_json(r));
    j["functional"] = to_json(c.functional);
    j["facets"] = Json::array();
    for (const auto& f : c.facets) j["facets"].push_back(to_json(f));
    j["cross_section"] = polytope_json(cross_section(c).polytope);
    return j;
}

InstanceSpec load_instance(const Json& j) {
    if (!j.is_object()) throw InputError("instance file must be an object");
    for (const char* k : {"N", "M", "D", "Dprime", "v", "t"})
        if (!j.contains(k)) throw InputError(std::string("instance file needs \"") + k + "\"");
    InstanceSpec s;
    s.n_generators = json_zvectors(j.at("N"), "generators");
    s.m_generators = json_zvectors(j.at("M"), "generators");
    s.d_rays = json_zvectors(j.at("D"), "rays");
    s.dprime_rays = json_zvectors(j.at("Dprime"), "rays");
    s.v = json_qvector(j.at("v"));
    s.t = json_zvector(j.at("t"));
    if (j.contains("i")) s.i = j.at("i").get<int>();
    if (j.contains("s")) s.s = j.at("s").get<int>();
    return s;
}

Json instance_spec_json(const InstanceSpec& s) {
    auto list = [](const std::vector<ZVector>& vs) {
        Json a = Json::array();
        for (const auto& v : vs) a.push_back(to_json(v));
        return a;
    };
    Json j;
    j["N"] = list(s.n_generators);
    j["M"] = list(s.m_generators);
    j["D"] = list(s.d_rays);
    j["Dprime"] = list(s.dprime_rays);
    j["v"] = to_json(s.v);
    j["t"] = to_json(s.t);
    j["i"] = s.i;
    j["s"] = s.s;
    return j;
}

Json instance_json(const DescentInstance& inst) {
    Json j;
    j["spec"] = instance_spec_json(inst.spec);
    j["grading"] = to_json(inst.grading);
    j["n"] = inst.n;
    j["gammas"] = inst.gammas;
    j["chain"] = Json::array();
    for (int k = 0; k <= inst.n; ++k) {
        const ChainRing& ring = inst.chain[static_cast<std::size_t>(k)];
        Json r;
        r["j"] = k;
        r["cross_section"] = Json::array();
        for (const auto& v : ring.section.vertices) r["cross_section"].push_back(to_json(v));
        r["rays"] = Json::array();
        for (const auto& ray : ring.cone.rays) r["rays"].push_back(to_json(ray));
        r["gamma"] = inst.gammas[static_cast<std::size_t>(k)];
        if (k < inst.n) {
            const GammaLink& l = inst.links[static_cast<std::size_t>(k)];
            r["link"] = {{"m0", to_json(l.m0)},
                         {"multiplier", l.multiplier},
                         {"divisor", to_json(l.divisor)},
                         {"lp_bound", to_json(l.lp_bound)}};
        }
        j["chain"].push_back(r);
    }
    return j;
}

Json exceptional_json(const ExceptionalResult& r) {
    Json j;
    j["monomials"] = Json::array();
    for (const auto& b : r.monomials) j["monomials"].push_back(monomial_json(b));
    j["threshold"] = r.threshold;
    j["facet_bounds"] = Json::array();
    for (const auto& b : r.facet_bounds) j["facet_bounds"].push_back(b ? to_json(*b) : Json(nullptr));
    j["d_branch_clean"] = r.d_branch_clean;
    return j;
}

Json monomial_json(const BasisMonomial& b) {
    return {{"slot", slot_name(b.slot)}, {"point", to_json(b.point)}, {"degree", b.degree}};
}

BasisMonomial load_monomial(const Json& j, const DescentInstance& inst) {
    if (!j.is_object() || !j.contains("slot") || !j.contains("point")) throw InputError("monomial needs slot and point");
    Point p;
    for (const auto& x : j.at("point")) p.push_back(to_int64(json_integer(x)));
    if (p.size() != inst.grading.size()) throw InputError("monomial point has the wrong dimension");
    return inst.monomial(parse_slot(j.at("slot").get<std::string>()), p);
}

Chain load_chain(const Json& j, const DescentInstance& inst) {
    if (!j.is_array()) throw InputError("chain file must be a list of terms");
    Chain c;
    for (const auto& term : j) {
        if (!term.contains("coeff") || !term.contains("factors")) throw InputError("chain term needs coeff and factors");
        Tensor t;
        for (const auto& f : term.at("factors")) t.push_back(load_monomial(f, inst));
        add_term(c, t, json_rational(term.at("coeff")));
    }
    return c;
}

Json chain_json(const Chain& c) {
    Json a = Json::array();
    for (const auto& [t, q] : c) {
        Json f = Json::array();
        for (const auto& b : t) f.push_back(monomial_json(b));
        a.push_back({{"coeff", to_json(q)}, {"factors", f}});
    }
    return a;
}

MachineState load_state(const Json& j) {
    if (!j.is_object() || !j.contains("sequences")) throw InputError("state file needs \"sequences\"");
    MachineState s;
    for (const auto& seq : j.at("sequences")) {
        std::string text;
        if (seq.is_string()) {
            text = seq.get<std::string>();
        } else {
            for (const auto& c : seq) text += c.get<std::string>();
        }
        s.insert(ISequence::parse(text));
    }
    if (j.contains("i"))
        for (const auto& x : s)
            if (x.i() != j.at("i").get<int>()) throw InputError("sequence length does not match i");
    return s;
}

Json state_json(const MachineState& s) {
    Json a = Json::array();
    for (const auto& x : s) a.push_back(x.to_string());
    return a;
}

Json trace_json(const MachineTrace& t) {
    Json a = Json::array();
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        Json e = {{"state", state_json(t.states[k])}};
        if (k < t.chosen.size()) e["chosen"] = state_json(t.chosen[k]);
        a.push_back(e);
    }
    return a;
}

Json worst_case_json(const WorstCase& w) {
    Json j;
    j["i"] = w.i;
    j["bound"] = w.bound;
    j["exhaustive_mode"] = w.exhaustive_mode;
    j["exhaustive_max"] = w.exhaustive_max;
    j["exhaustive_cycle"] = w.exhaustive_cycle;
    j["exhaustive_witness"] = trace_json(w.exhaustive_witness);
    j["episodes"] = w.episodes;
    j["random_max"] = w.random_max;
    j["random_hit_cap"] = w.random_hit_cap;
    if (w.literal_searched) {
        j["literal_max"] = w.literal_max;
        if (w.literal_cycle) j["literal_cycle"] = trace_json(*w.literal_cycle);
    }
    j["within_bound"] = w.within_bound();
    return j;
}

Json sublemma_json(const SublemmaResult& r) {
    Json j;
    j["n"] = r.n;
    j["bound"] = r.bound;
    j["max_steps"] = r.max_steps;
    j["cycle"] = r.cycle;
    j["witness"] = r.witness;
    j["empty_replacement_max"] = r.empty_replacement_max;
    return j;
}

Json descent_record_json(const DescentStepRecord& r) {
    Json j;
    j["j"] = r.j;
    j["i"] = r.i;
    j["delta_before"] = r.delta_before;
    j["delta_after"] = r.delta_after;
    j["z_terms"] = r.z.size();
    j["z_min_terms"] = r.z_min.size();
    j["z_prime_terms"] = r.z_prime.size();
    j["z_second_terms"] = r.z_second.size();
    j["selected"] = Json::array();
    for (const auto& l : r.lifts)
        j["selected"].push_back({{"l0", l.delta.l},
                                 {"r0", l.delta.r},
                                 {"epsilon", l.epsilon},
                                 {"coeff", to_json(l.coeff)},
                                 {"prime", monomial_json(l.factor.prime)},
                                 {"central", monomial_json(l.factor.central)}});
    j["z_hat_terms"] = r.z_hat.size();
    j["z1_terms"] = r.z1.size();
    j["window_pairs"] = r.window_pairs;
    j["format_classes"] = r.format_classes;
    j["sequences_before"] = state_json(r.sequences_before);
    j["sequences_after"] = state_json(r.sequences_after);
    j["machine_T"] = state_json(r.machine.t);
    j["flags"] = {{"lifted_in_complex", r.lifted_in_complex}, {"z1_cycle", r.z1_cycle},
                  {"kthsummand", r.kth_summand},              {"cycle0sum", r.cycle0sum},
                  {"class_sums", r.class_sums},               {"0sum", r.zero_sum},
                  {"implication0", r.implication0},           {"delta_constant", r.delta_constant},
                  {"claim_b", r.claim_b}};
    j["failures"] = r.failures;
    return j;
}

Json descent_run_json(const DescentRun& r) {
    Json j;
    j["steps"] = Json::array();
    for (const auto& s : r.steps) j["steps"].push_back(descent_record_json(s));
    j["final_ring"] = r.final_ring;
    j["reached_zero"] = r.reached_zero;
    j["final_terms"] = r.final_chain.size();
    j["ok"] = r.ok();
    return j;
}

}  // namespace descent
