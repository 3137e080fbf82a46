#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "descent/io.hpp"

using namespace descent;

namespace {

struct Output {
    std::string out;
    bool json = false;

    void emit(const Json& report, const std::string& summary) const {
        if (!out.empty()) write_json_file(out, report);
        if (json)
            std::cout << report.dump(2) << "\n";
        else
            std::cout << summary;
    }
};

void add_output(CLI::App* cmd, Output& o) {
    cmd->add_option("--out", o.out, "write the JSON report to this path");
    cmd->add_flag("--json", o.json, "print the JSON report instead of the summary");
}

DescentInstance load_built(const std::string& path, int i_override, int s_override) {
    InstanceSpec spec = load_instance(read_json_file(path));
    if (i_override > 0) spec.i = i_override;
    if (s_override > 0) spec.s = s_override;
    return build_instance(spec);
}

std::string join_state(const MachineState& s) {
    std::string out;
    for (const auto& x : s) out += (out.empty() ? "" : " ") + x.to_string();
    return "{" + out + "}";
}

Json certify(const DescentInstance& inst, std::int64_t deg_max, std::size_t samples, std::uint64_t episodes,
             std::uint64_t seed, bool& verified, std::string& summary) {
    const int i = inst.i, s = inst.s, n = inst.n;
    Json report;
    report["instance"] = instance_json(inst);
    verified = true;

    report["exceptional"] = Json::array();
    for (int j = 0; j <= n; ++j) {
        Json e = exceptional_json(exceptional_monomials(inst, j));
        e["j"] = j;
        report["exceptional"].push_back(e);
    }

    SliceCache cache(inst);
    bool dd_zero = true;
    std::size_t dd_tensors = 0;
    report["homology"] = Json::array();
    for (int j = 0; j <= n; ++j)
        for (std::int64_t d = 0; d <= deg_max; ++d) {
            auto h = homology_rank(cache, j, i, s, d);
            report["homology"].push_back({{"j", j}, {"i", i}, {"d", d}, {"slice", h.slice}, {"cycles", h.cycles},
                                          {"boundaries", h.boundaries}, {"homology", h.homology}});
            for (int k = 1; k <= i + 1; ++k)
                for (const auto& t : slice_basis(cache, j, k, s, d)) {
                    ++dd_tensors;
                    if (!boundary(inst, j, s, boundary(inst, j, s, t)).empty()) dd_zero = false;
                }
        }
    report["boundary_squared"] = {{"tensors", dd_tensors}, {"zero", dd_zero}};
    if (!dd_zero) verified = false;

    report["image_ranks"] = Json::array();
    for (std::int64_t d = 0; d <= deg_max; ++d) {
        auto r = induced_image_rank(cache, 0, n, i, s, d);
        report["image_ranks"].push_back({{"from", 0}, {"to", n}, {"i", i}, {"d", d}, {"source_cycles", r.source_cycles},
                                         {"target_boundaries", r.target_boundaries}, {"image", r.image}});
    }

    const std::int64_t low = checked_add(checked_mul(i + 1, inst.gammas[0]), 1);
    const Integer box = cone_points_box(inst, n, low);
    Json window;
    window["degrees"] = {low, low + 4};
    window["monomial_box_per_degree"] = to_json(box);
    const bool feasible = box <= 100000 && low <= deg_max;
    window["feasible"] = feasible;
    if (feasible) {
        bool zero = true;
        window["ranks"] = Json::array();
        for (std::int64_t d = low; d <= low + 4; ++d) {
            auto r = induced_image_rank(cache, 0, n, i, s, d);
            window["ranks"].push_back({{"d", d}, {"image", r.image}});
            if (r.image != 0) zero = false;
        }
        window["all_zero"] = zero;
        if (!zero) verified = false;
    } else {
        window["fallback"] = "window slices exceed the budget; evidence: exact descent on sampled window cycles and image ranks for d <= deg-max";
    }

    report["window"] = window;

    std::mt19937_64 rng(seed);
    Json descent;
    descent["cycles"] = Json::array();
    std::size_t tested = 0, ok = 0, reached = 0, pairs = 0;
    for (std::size_t round = 0; tested < samples && round < 4 * samples + 4; ++round) {
        const std::int64_t d = checked_add(checked_mul(i + 1, inst.gammas[0]), 1 + static_cast<std::int64_t>(round % 5));
        const int min_high = i >= 2 && round % 2 == 1 ? 2 : 1;
        for (const auto& z : sample_cycles(cache, 0, i, d, 1, rng, 3, min_high)) {
            DescentRun run = descend(inst, z, 0);
            ++tested;
            ok += run.ok();
            reached += run.reached_zero;
            for (const auto& st : run.steps) pairs += st.window_pairs;
            Json rj = descent_run_json(run);
            rj["degree"] = d;
            rj["terms"] = z.size();
            descent["cycles"].push_back(rj);
        }
    }
    descent["sampled"] = tested;
    descent["all_flags"] = ok == tested;
    descent["reached_zero"] = reached;
    descent["window_pairs"] = pairs;
    report["descent"] = descent;
    if (ok != tested || tested == 0) verified = false;

    if (i <= 2) {
        WorstCase w = worst_case(i, episodes, seed);
        report["machine"] = worst_case_json(w);
        if (!w.within_bound()) verified = false;
    }
    report["verified"] = verified;

    summary = "n = " + std::to_string(n) + ", gamma_0 = " + std::to_string(inst.gammas[0]) + "\n";
    summary += "boundary squared zero on " + std::to_string(dd_tensors) + " tensors: " + (dd_zero ? "yes" : "NO") + "\n";
    summary += "window (" + std::to_string(low - 1) + ", " + std::to_string(low + 4) + "]: " +
               (feasible ? std::string("computed") : "infeasible, fallback recorded") + "\n";
    summary += "descent: " + std::to_string(ok) + "/" + std::to_string(tested) + " runs verified, " +
               std::to_string(reached) + " reached zero\n";
    summary += std::string("verified: ") + (verified ? "yes" : "NO") + "\n";
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pyramidal descent toolkit"};
    app.require_subcommand(1);
    Output o;
    std::string polytope, target, rays, monoid, instance, chain, seq, state, next, apexes;
    int i = 0, s = 0, j = 0, jp = -1, nn = 0;
    std::int64_t d_max = 8;
    std::size_t budget = 500, samples = 12;
    std::uint64_t episodes = 2000, seed = 1;
    bool full = false;

    auto* hull = app.add_subcommand("hull", "convex hull of a vertex list");
    hull->add_option("--polytope", polytope)->required();
    add_output(hull, o);

    auto* cx = app.add_subcommand("complexity", "complexity with a pyramid tower");
    cx->add_option("--polytope", polytope)->required();
    add_output(cx, o);

    auto* adm = app.add_subcommand("admissible", "admissible sequence into a target");
    adm->add_option("--polytope", polytope)->required();
    adm->add_option("--target", target)->required();
    adm->add_option("--apexes", apexes, "JSON list of apex points");
    adm->add_option("--budget", budget);
    add_output(adm, o);

    auto* cone = app.add_subcommand("cone", "pointed cone data");
    cone->add_option("--rays", rays)->required();
    add_output(cone, o);

    auto* hb = app.add_subcommand("hilbert", "Hilbert basis of a cone");
    hb->add_option("--rays", rays)->required();
    add_output(hb, o);

    auto* nm = app.add_subcommand("normal", "normality of an affine monoid");
    nm->add_option("--monoid", monoid)->required();
    add_output(nm, o);

    auto* ins = app.add_subcommand("instance", "build a descent instance");
    ins->add_option("--instance", instance)->required();
    ins->add_option("--i", i);
    ins->add_option("--s", s);
    add_output(ins, o);

    auto* exc = app.add_subcommand("exceptional", "exceptional monomials of a chain ring");
    exc->add_option("--instance", instance)->required();
    exc->add_option("--j", j);
    add_output(exc, o);

    auto* hh = app.add_subcommand("hh-rank", "truncated Hochschild homology ranks");
    hh->add_option("--instance", instance)->required();
    hh->add_option("--j", j);
    hh->add_option("--i", i);
    hh->add_option("--s", s);
    hh->add_option("--deg-max", d_max);
    add_output(hh, o);

    auto* hi = app.add_subcommand("hh-image", "image ranks along the chain");
    hi->add_option("--instance", instance)->required();
    hi->add_option("--from", j);
    hi->add_option("--to", jp);
    hi->add_option("--i", i);
    hi->add_option("--s", s);
    hi->add_option("--deg-max", d_max);
    add_output(hi, o);

    auto* ds = app.add_subcommand("descend", "descent step on a cycle");
    ds->add_option("--instance", instance)->required();
    ds->add_option("--chain", chain)->required();
    ds->add_option("--j", j);
    ds->add_flag("--full", full, "iterate along the chain");
    add_output(ds, o);

    auto* sc = app.add_subcommand("sample-cycle", "random Hochschild cycles of a chain ring");
    std::int64_t degree = -1;
    sc->add_option("--instance", instance)->required();
    sc->add_option("--j", j);
    sc->add_option("--i", i);
    sc->add_option("--degree", degree, "defaults to just above the window threshold");
    sc->add_option("--seed", seed);
    add_output(sc, o);

    auto* ma = app.add_subcommand("machine-analyze", "clusters, transformations and machine steps");
    ma->add_option("--seq", seq);
    ma->add_option("--state", state);
    ma->add_option("--next", next, "state file to validate as the next machine state");
    add_output(ma, o);

    auto* mw = app.add_subcommand("machine-worst", "worst-case delta-machine run length");
    mw->add_option("--i", i)->required();
    mw->add_option("--episodes", episodes);
    mw->add_option("--seed", seed);
    add_output(mw, o);

    auto* sl = app.add_subcommand("sublemma", "adversarial solve of the set game");
    sl->add_option("--n", nn)->required();
    add_output(sl, o);

    auto* oc = app.add_subcommand("order-check", "acyclicity of the transformation order");
    oc->add_option("--i", i)->required();
    add_output(oc, o);

    auto* cert = app.add_subcommand("certify", "full verification pipeline");
    cert->add_option("--instance", instance)->required();
    cert->add_option("--i", i);
    cert->add_option("--s", s);
    cert->add_option("--deg-max", d_max);
    cert->add_option("--samples", samples);
    cert->add_option("--episodes", episodes);
    cert->add_option("--seed", seed);
    add_output(cert, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*hull) {
            Polytope p = load_polytope(read_json_file(polytope));
            o.emit(polytope_json(p), "dim " + std::to_string(p.dim) + ", " + std::to_string(p.vertices.size()) +
                                         " vertices, " + std::to_string(p.facets.size()) + " facets\n");
        } else if (*cx) {
            Polytope p = load_polytope(read_json_file(polytope));
            ComplexityCertificate c = complexity(p);
            Json r = {{"complexity", c.value}, {"apexes", Json::array()}};
            for (const auto& a : c.apexes) r["apexes"].push_back(to_json(a));
            o.emit(r, std::to_string(c.value) + "\n");
        } else if (*adm) {
            Polytope p = load_polytope(read_json_file(polytope));
            Polytope t = load_polytope(read_json_file(target));
            std::vector<QVector> ap;
            if (!apexes.empty())
                for (const auto& v : read_json_file(apexes)) ap.push_back(json_qvector(v));
            AdmissibleSequence seqr = build_admissible_sequence(p, t, ap, budget);
            SequenceValidation v = validate_admissible_sequence(seqr);
            Json r = {{"steps", Json::array()}, {"valid", v.valid}, {"reaches_target", v.reaches_target},
                      {"budget_exhausted", seqr.budget_exhausted}};
            for (const auto& st : seqr.steps)
                r["steps"].push_back({{"kind", st.kind == StepKind::shrink ? "shrink" : "grow"},
                                      {"polytope", polytope_json(st.polytope)}});
            if (!v.valid) r["violation"] = {{"step", v.step}, {"reason", v.reason}};
            o.emit(r, std::to_string(seqr.steps.size()) + " steps, valid " + (v.valid ? "yes" : "no") +
                          ", inside target " + (v.reaches_target ? "yes" : "no") + "\n");
            if (seqr.budget_exhausted) throw BudgetExceeded("admissible sequence budget exhausted");
            if (!v.valid) return 1;
        } else if (*cone) {
            Cone c = make_cone(json_zvectors(read_json_file(rays), "rays"));
            o.emit(cone_json(c), "dim " + std::to_string(c.dim) + ", " + std::to_string(c.rays.size()) + " rays, " +
                                     std::to_string(c.facets.size()) + " facets\n");
        } else if (*hb) {
            Cone c = make_cone(json_zvectors(read_json_file(rays), "rays"));
            auto basis = hilbert_basis(c);
            Json r = {{"hilbert_basis", Json::array()}};
            std::string text;
            for (const auto& b : basis) {
                r["hilbert_basis"].push_back(to_json(b));
                text += format_qvector(to_qvector(b)) + "\n";
            }
            o.emit(r, text);
        } else if (*nm) {
            AffineMonoid m = make_monoid(json_zvectors(read_json_file(monoid), "generators"));
            NormalityResult res = normality(m);
            Json r = {{"normal", res.normal}, {"integral_closure", Json::array()}};
            for (const auto& g : res.integral_closure) r["integral_closure"].push_back(to_json(g));
            if (res.witness) r["witness"] = to_json(*res.witness);
            o.emit(r, std::string(res.normal ? "normal" : "not normal") +
                          (res.witness ? ", witness " + format_qvector(to_qvector(*res.witness)) : "") + "\n");
        } else if (*ins) {
            DescentInstance inst = load_built(instance, i, s);
            std::string text = "n = " + std::to_string(inst.n) + "\ngammas:";
            for (auto g : inst.gammas) text += " " + std::to_string(g);
            o.emit(instance_json(inst), text + "\n");
        } else if (*exc) {
            DescentInstance inst = load_built(instance, 0, 0);
            ExceptionalResult r = exceptional_monomials(inst, j);
            std::string text = "threshold " + std::to_string(r.threshold) + "\n";
            for (const auto& b : r.monomials) text += b.to_string() + "\n";
            o.emit(exceptional_json(r), text);
        } else if (*hh) {
            DescentInstance inst = load_built(instance, i, s);
            SliceCache cache(inst);
            Json r = Json::array();
            std::string text;
            for (std::int64_t d = 0; d <= d_max; ++d) {
                auto h = homology_rank(cache, j, inst.i, inst.s, d);
                r.push_back({{"j", j}, {"i", inst.i}, {"d", d}, {"slice", h.slice}, {"cycles", h.cycles},
                             {"boundaries", h.boundaries}, {"homology", h.homology}});
                text += "d=" + std::to_string(d) + " slice " + std::to_string(h.slice) + " HH " +
                        std::to_string(h.homology) + "\n";
            }
            o.emit(r, text);
        } else if (*hi) {
            DescentInstance inst = load_built(instance, i, s);
            if (jp < 0) jp = inst.n;
            SliceCache cache(inst);
            Json r = Json::array();
            std::string text;
            for (std::int64_t d = 0; d <= d_max; ++d) {
                auto im = induced_image_rank(cache, j, jp, inst.i, inst.s, d);
                r.push_back({{"d", d}, {"source_cycles", im.source_cycles}, {"target_boundaries", im.target_boundaries},
                             {"image", im.image}});
                text += "d=" + std::to_string(d) + " image " + std::to_string(im.image) + "\n";
            }
            o.emit(r, text);
        } else if (*ds) {
            DescentInstance inst = load_built(instance, 0, 0);
            Chain z = load_chain(read_json_file(chain), inst);
            if (full) {
                DescentRun run = descend(inst, z, j);
                o.emit(descent_run_json(run), std::to_string(run.steps.size()) + " steps, reached zero " +
                                                  (run.reached_zero ? "yes" : "no") + ", verified " +
                                                  (run.ok() ? "yes" : "NO") + "\n");
                if (!run.ok()) return 1;
            } else {
                DescentStepRecord rec = descent_step(inst, z, j);
                Json r = descent_record_json(rec);
                r["z1"] = chain_json(rec.z1);
                std::string text = "z1 has " + std::to_string(rec.z1.size()) + " terms; ";
                text += rec.ok() ? "all identities verified\n" : "FAILED:";
                for (const auto& f : rec.failures) text += " " + f + ";";
                if (!rec.ok()) text += "\n";
                o.emit(r, text);
                if (!rec.ok()) return 1;
            }
        } else if (*sc) {
            DescentInstance inst = load_built(instance, i, 0);
            if (j < 0 || j > inst.n) throw InputError("j out of range");
            if (degree < 0) degree = checked_add(checked_mul(inst.i + 1, inst.gammas[static_cast<std::size_t>(j)]), 1);
            SliceCache cache(inst);
            std::mt19937_64 rng(seed);
            auto cycles = sample_cycles(cache, j, inst.i, degree, 1, rng);
            if (cycles.empty()) throw VerificationError("no cycle found at this degree");
            o.emit(chain_json(cycles.front()), chain_json(cycles.front()).dump(2) + "\n");
        } else if (*ma) {
            Json r;
            std::string text;
            if (!seq.empty()) {
                ISequence x = ISequence::parse(seq);
                SequenceAnalysis a = analyze(x);
                r["sequence"] = x.to_string();
                r["l"] = a.l;
                r["r"] = a.r;
                r["delta"] = a.delta;
                r["clusters"] = Json::array();
                for (const auto& c : a.clusters) r["clusters"].push_back({c.start, c.end});
                r["transformations"] = Json::array();
                for (const auto& t : transformations(x)) r["transformations"].push_back(t.result.to_string());
                r["improvements"] = Json::array();
                for (const auto& t : improvements(x)) r["improvements"].push_back(t.to_string());
                text = "l = " + std::to_string(a.l) + ", r = " + std::to_string(a.r) + ", delta = " +
                       std::to_string(a.delta) + "\ntrf: " + join_state(trf(x)) + "\n";
            }
            if (!state.empty()) {
                MachineState st = load_state(read_json_file(state));
                r["state"] = state_json(st);
                r["union_all"] = state_json(machine_union(st, st));
                text += "Trf over all of S: " + join_state(machine_union(st, st)) + "\n";
                if (!next.empty()) {
                    MachineState nx = load_state(read_json_file(next));
                    StepValidation v = validate_step(st, nx);
                    r["step_valid"] = v.ok;
                    r["step_T"] = state_json(v.t);
                    text += std::string("next state is a machine step: ") + (v.ok ? "yes, T = " + join_state(v.t) : "no") + "\n";
                }
            }
            if (seq.empty() && state.empty()) throw InputError("machine-analyze needs --seq or --state");
            o.emit(r, text);
        } else if (*mw) {
            WorstCase w = worst_case(i, episodes, seed);
            std::string text = "bound " + std::to_string(w.bound) + "\nobserved max " + std::to_string(w.exhaustive_max) +
                               " (" + w.exhaustive_mode + ")\n";
            if (w.random_max >= 0) text += "random episodes max " + std::to_string(w.random_max) + "\n";
            if (w.literal_searched)
                text += "literal relational search: " +
                        (w.literal_cycle ? std::string("cycle found") : "max " + std::to_string(w.literal_max)) + "\n";
            o.emit(worst_case_json(w), text);
            if (!w.within_bound()) return 1;
        } else if (*sl) {
            SublemmaResult res = sublemma_solve(nn);
            o.emit(sublemma_json(res), "bound " + std::to_string(res.bound) + "\nobserved max " +
                                           std::to_string(res.max_steps) + "\n");
            if (res.cycle || static_cast<std::uint64_t>(res.max_steps) > res.bound) return 1;
        } else if (*oc) {
            OrderCheck c = order_check(i);
            Json r = {{"i", i}, {"acyclic", c.ok}, {"cycle", Json::array()}};
            for (const auto& x : c.cycle) r["cycle"].push_back(x.to_string());
            o.emit(r, std::string(c.ok ? "acyclic" : "cycle found") + "\n");
            if (!c.ok) return 1;
        } else if (*cert) {
            DescentInstance inst = load_built(instance, i, s);
            bool verified = false;
            std::string text;
            Json r = certify(inst, d_max, samples, episodes, seed, verified, text);
            o.emit(r, text);
            if (!verified) return 1;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::overflow_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
