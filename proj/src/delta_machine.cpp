#include "descent/delta_machine.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>

#include "descent/arith.hpp"

namespace descent {

ISequence ISequence::parse(const std::string& s) {
    if (s.size() < 2 || s.size() > 31) throw InputError("i-sequence length must be between 2 and 31");
    ISequence out;
    out.length = static_cast<int>(s.size());
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '+')
            out.mask |= std::uint32_t{1} << q;
        else if (s[q] != '-')
            throw InputError("i-sequence symbols must be + or -");
    }
    return out;
}

ISequence ISequence::all_plus(int i) { return {i + 1, (std::uint32_t{1} << (i + 1)) - 1}; }
ISequence ISequence::all_minus(int i) { return {i + 1, 0}; }

bool ISequence::plus(int q) const {
    int p = ((q % length) + length) % length;
    return (mask >> p) & 1u;
}

int ISequence::plus_count() const { return __builtin_popcount(mask); }

std::string ISequence::to_string() const {
    std::string s;
    for (int q = 0; q < length; ++q) s += plus(q) ? '+' : '-';
    return s;
}

SequenceAnalysis analyze(const ISequence& s) {
    SequenceAnalysis a;
    const int i = s.i();
    if (s.is_all_plus()) {
        a.clusters = {{0, i}};
        a.l = 0;
        a.r = i;
        a.delta = i;
        a.initial = a.clusters.front();
        return a;
    }
    if (s.is_all_minus()) return a;
    for (int q = 0; q <= i; ++q) {
        if (!s.plus(q) || s.plus(q - 1)) continue;
        int r = q;
        while (s.plus(r + 1)) ++r;
        a.clusters.push_back({q, r});
    }
    a.initial = a.clusters.front();
    a.l = a.initial->start;
    a.r = a.initial->end;
    a.delta = a.r - a.l;
    return a;
}

namespace {

ISequence remove_at(const ISequence& s, int p) {
    ISequence out{s.length - 1, 0};
    for (int q = 0, k = 0; q < s.length; ++q) {
        if (q == p) continue;
        if (s.plus(q)) out.mask |= std::uint32_t{1} << k;
        ++k;
    }
    return out;
}

ISequence insert_plus(const ISequence& s, int p) {
    ISequence out{s.length + 1, 0};
    for (int q = 0, k = 0; q < out.length; ++q) {
        if (q == p) {
            out.mask |= std::uint32_t{1} << q;
            continue;
        }
        if (s.plus(k)) out.mask |= std::uint32_t{1} << q;
        ++k;
    }
    return out;
}

Contraction contract(const ISequence& s, int p) {
    Contraction c;
    c.result = remove_at(s, p);
    c.deleted = p;
    for (int q = 0; q < s.length; ++q) c.index_map.push_back(q == p ? -1 : (q < p ? q : q - 1));
    return c;
}

}  // namespace

std::vector<Contraction> contractions(const ISequence& s) {
    const int i = s.i();
    const int len = s.length;
    SequenceAnalysis a = analyze(s);
    std::set<int> deletable;
    for (int p = 0; p < len; ++p)
        if (!s.plus(p)) deletable.insert(p);
    for (const auto& c : a.clusters) {
        if (a.initial && c == *a.initial) continue;
        if (c.start < i && c.start < c.end) {
            for (int k = c.start + 1; k <= c.end; ++k)
                if (k % len != 0) deletable.insert(k % len);
        } else if (c.start == i && c.end > i) {
            for (int k = i; k <= c.end; ++k)
                if (k % len != 0) deletable.insert(k % len);
        }
    }
    std::vector<Contraction> out;
    for (int p : deletable) out.push_back(contract(s, p));
    return out;
}

std::vector<Transformation> transformations(const ISequence& s) {
    if (s.is_all_minus()) throw InputError("transformations are not defined for the all-minus sequence");
    if (s.is_all_plus()) {
        Transformation t;
        t.result = s;
        return {t};
    }
    SequenceAnalysis a = analyze(s);
    const int pr = a.r % s.length;
    std::vector<Transformation> out;
    for (auto& c : contractions(s)) {
        Transformation t;
        t.inserted_at = c.index_map[pr] + 1;
        t.result = insert_plus(c.result, t.inserted_at);
        t.contraction = std::move(c);
        out.push_back(std::move(t));
    }
    return out;
}

std::set<ISequence> trf(const ISequence& s) {
    std::set<ISequence> out;
    for (const auto& t : transformations(s)) out.insert(t.result);
    return out;
}

bool is_improvement(const ISequence& improved, const ISequence& s) {
    if (improved.length != s.length) throw InputError("i-sequences of different lengths");
    return (improved.mask & s.mask) == s.mask;
}

std::vector<ISequence> improvements(const ISequence& s) {
    std::vector<ISequence> out;
    const std::uint32_t free = ~s.mask & ((std::uint32_t{1} << s.length) - 1);
    for (std::uint32_t sub = free;; sub = (sub - 1) & free) {
        out.push_back({s.length, s.mask | sub});
        if (sub == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool precedes(const ISequence& a, const ISequence& b) {
    if (a.length != b.length) throw InputError("i-sequences of different lengths");
    if (b.plus_count() > a.plus_count()) return true;
    if (b.plus_count() < a.plus_count()) return false;
    if (a == b) return true;
    if (a.is_all_minus()) return false;
    std::set<ISequence> seen{a};
    std::queue<ISequence> todo;
    todo.push(a);
    while (!todo.empty()) {
        ISequence x = todo.front();
        todo.pop();
        for (const auto& y : trf(x)) {
            if (y.plus_count() != a.plus_count() || !seen.insert(y).second) continue;
            if (y == b) return true;
            todo.push(y);
        }
    }
    return false;
}

OrderCheck order_check(int i) {
    if (i < 1 || i > 4) throw InputError("order check supports 1 <= i <= 4");
    const int len = i + 1;
    std::map<ISequence, std::vector<ISequence>> edges;
    for (std::uint32_t m = 1; m + 1 < (std::uint32_t{1} << len); ++m) {
        ISequence s{len, m};
        for (const auto& t : trf(s))
            if (t.plus_count() == s.plus_count()) edges[s].push_back(t);
    }
    OrderCheck res;
    std::map<ISequence, int> color;
    std::vector<ISequence> stack;
    auto dfs = [&](auto&& self, const ISequence& s) -> bool {
        color[s] = 1;
        stack.push_back(s);
        for (const auto& t : edges[s]) {
            if (color[t] == 1) {
                auto it = std::find(stack.begin(), stack.end(), t);
                res.cycle.assign(it, stack.end());
                return true;
            }
            if (color[t] == 0 && self(self, t)) return true;
        }
        stack.pop_back();
        color[s] = 2;
        return false;
    };
    for (const auto& [s, _] : edges)
        if (color[s] == 0 && dfs(dfs, s)) {
            res.ok = false;
            return res;
        }
    return res;
}

MachineState machine_union(const MachineState& s, const MachineState& t) {
    MachineState u;
    for (const auto& x : s) {
        if (t.count(x)) {
            auto tr = trf(x);
            u.insert(tr.begin(), tr.end());
        } else {
            u.insert(x);
        }
    }
    return u;
}

MachineState machine_step(const MachineState& s, const MachineState& t,
                          const std::function<ISequence(const ISequence&)>& improve) {
    if (s.empty()) throw InputError("empty machine state");
    const ISequence top = ISequence::all_plus(s.begin()->i());
    if (s == MachineState{top}) return s;
    if (t.empty()) throw InputError("empty T for a non-terminal state");
    for (const auto& x : t)
        if (!s.count(x) || x == top) throw InputError("T must be a subset of S without the all-plus sequence");
    MachineState next{top};
    for (const auto& u : machine_union(s, t)) {
        ISequence v = improve ? improve(u) : u;
        if (!is_improvement(v, u)) throw InputError("chosen sequence is not an improvement");
        next.insert(v);
    }
    return next;
}

StepValidation validate_step(const MachineState& s, const MachineState& next) {
    StepValidation res;
    if (s.empty() || next.empty()) return res;
    const ISequence top = ISequence::all_plus(s.begin()->i());
    if (!next.count(top)) return res;
    if (s == MachineState{top}) {
        res.ok = next == s;
        return res;
    }
    std::vector<ISequence> cand;
    for (const auto& x : s)
        if (x != top && !x.is_all_minus()) cand.push_back(x);
    if (cand.size() > 20) throw BudgetExceeded("machine state too large to validate");
    for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << cand.size()); ++sub) {
        MachineState t;
        for (std::size_t k = 0; k < cand.size(); ++k)
            if ((sub >> k) & 1u) t.insert(cand[k]);
        MachineState u = machine_union(s, t);
        bool ok = true;
        for (const auto& y : next) {
            bool found = false;
            for (const auto& x : u)
                if (is_improvement(y, x)) {
                    found = true;
                    break;
                }
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) {
            res.ok = true;
            res.t = t;
            return res;
        }
    }
    return res;
}

bool WorstCase::within_bound() const {
    if (exhaustive_cycle || random_hit_cap) return false;
    if (static_cast<std::uint64_t>(exhaustive_max) >= bound) return false;
    if (random_max >= 0 && static_cast<std::uint64_t>(random_max) >= bound) return false;
    return true;
}

namespace {

// sets of sequences of one length as bitmasks over sequence masks
using SetMask = std::uint64_t;

struct Tables {
    int len = 0;
    SetMask top = 0;
    std::vector<SetMask> trf;
    std::vector<SetMask> up;
};

Tables make_tables(int i) {
    Tables t;
    t.len = i + 1;
    const std::uint32_t n = std::uint32_t{1} << t.len;
    t.top = SetMask{1} << (n - 1);
    t.trf.assign(n, 0);
    t.up.assign(n, 0);
    for (std::uint32_t m = 1; m < n; ++m) {
        for (const auto& x : trf(ISequence{t.len, m})) t.trf[m] |= SetMask{1} << x.mask;
        for (const auto& x : improvements(ISequence{t.len, m})) t.up[m] |= SetMask{1} << x.mask;
    }
    return t;
}

SetMask union_mask(const Tables& tb, SetMask s, SetMask t) {
    SetMask u = s & ~t;
    for (SetMask rest = t; rest; rest &= rest - 1) u |= tb.trf[__builtin_ctzll(rest)];
    return u;
}

SetMask up_mask(const Tables& tb, SetMask u) {
    SetMask out = 0;
    for (SetMask rest = u; rest; rest &= rest - 1) out |= tb.up[__builtin_ctzll(rest)];
    return out;
}

MachineState to_state(const Tables& tb, SetMask s) {
    MachineState out;
    for (SetMask rest = s; rest; rest &= rest - 1)
        out.insert(ISequence{tb.len, static_cast<std::uint32_t>(__builtin_ctzll(rest))});
    return out;
}

template <class F>
void for_each_submask(SetMask m, F&& f) {
    for (SetMask sub = m;; sub = (sub - 1) & m) {
        f(sub);
        if (sub == 0) break;
    }
}

// longest path to {top} in the game graph; successors enumerated by next(s, emit(t, s'))
struct GameSolver {
    const Tables& tb;
    std::function<void(SetMask, const std::function<void(SetMask, SetMask)>&)> next;
    std::map<SetMask, int> depth;
    std::map<SetMask, std::pair<SetMask, SetMask>> best;  // chosen T, successor
    std::map<SetMask, int> color;
    std::optional<std::vector<std::pair<SetMask, SetMask>>> cycle;  // (state, T)
    std::vector<std::pair<SetMask, SetMask>> stack;

    GameSolver(const Tables& t, std::function<void(SetMask, const std::function<void(SetMask, SetMask)>&)> f)
        : tb(t), next(std::move(f)) {}

    int solve(SetMask s) {
        if (s == tb.top) return 0;
        auto it = depth.find(s);
        if (it != depth.end()) return it->second;
        color[s] = 1;
        int d = -1;
        next(s, [&](SetMask t, SetMask n) {
            if (cycle) return;
            if (color[n] == 1) {
                std::vector<std::pair<SetMask, SetMask>> c;
                bool on = false;
                for (const auto& e : stack) {
                    if (e.first == n) on = true;
                    if (on) c.push_back(e);
                }
                c.push_back({s, t});
                cycle = c;
                return;
            }
            stack.push_back({s, t});
            int sub = solve(n);
            stack.pop_back();
            if (!cycle && sub + 1 > d) {
                d = sub + 1;
                best[s] = {t, n};
            }
        });
        color[s] = 2;
        depth[s] = d;
        return d;
    }

    MachineTrace trace(SetMask s) const {
        MachineTrace tr;
        tr.states.push_back(to_state(tb, s));
        while (s != tb.top) {
            auto [t, n] = best.at(s);
            tr.chosen.push_back(to_state(tb, t));
            tr.states.push_back(to_state(tb, n));
            s = n;
        }
        return tr;
    }
};

SetMask valid_universe(const Tables& tb) { return ((SetMask{1} << (std::uint32_t{1} << tb.len)) - 1) & ~SetMask{1}; }

void for_each_t(const Tables& tb, SetMask s, const std::function<void(SetMask)>& f) {
    SetMask movable = s & ~tb.top;
    for_each_submask(movable, [&](SetMask t) {
        if (t) f(t);
    });
}

}  // namespace

WorstCase worst_case(int i, std::uint64_t episodes, std::uint64_t seed) {
    if (i < 1 || i > 2) throw InputError("worst-case search supports i in {1, 2}");
    WorstCase res;
    res.i = i;
    res.bound = (std::uint64_t{1} << ((1 << (i + 1)) - 1)) - 1;
    Tables tb = make_tables(i);
    const SetMask universe = valid_universe(tb);

    auto literal_next = [&](SetMask s, const std::function<void(SetMask, SetMask)>& emit) {
        for_each_t(tb, s, [&](SetMask t) {
            SetMask up = up_mask(tb, union_mask(tb, s, t)) & ~tb.top;
            for_each_submask(up, [&](SetMask sub) { emit(t, sub | tb.top); });
        });
    };
    auto identity_next = [&](SetMask s, const std::function<void(SetMask, SetMask)>& emit) {
        for_each_t(tb, s, [&](SetMask t) { emit(t, union_mask(tb, s, t)); });
    };

    auto run = [&](GameSolver& g, int& mx, MachineTrace& witness, bool& cyc) {
        SetMask starts = universe & ~tb.top;
        for_each_submask(starts, [&](SetMask sub) {
            if (g.cycle) return;
            SetMask s = sub | tb.top;
            int d = g.solve(s);
            if (!g.cycle && d > mx) {
                mx = d;
                witness = g.trace(s);
            }
        });
        cyc = g.cycle.has_value();
    };

    GameSolver literal{tb, literal_next};
    if (i == 1) {
        res.exhaustive_mode = "all T choices and all improvement choices";
        run(literal, res.exhaustive_max, res.exhaustive_witness, res.exhaustive_cycle);
    } else {
        res.exhaustive_mode = "all T choices, identity improvements";
        GameSolver ident{tb, identity_next};
        run(ident, res.exhaustive_max, res.exhaustive_witness, res.exhaustive_cycle);
        res.literal_searched = true;
        MachineTrace unused;
        bool cyc = false;
        run(literal, res.literal_max, unused, cyc);
        if (cyc) {
            MachineTrace tr;
            for (const auto& [s, t] : *literal.cycle) {
                tr.states.push_back(to_state(tb, s));
                tr.chosen.push_back(to_state(tb, t));
            }
            tr.states.push_back(tr.states.front());
            res.literal_cycle = tr;
            res.literal_max = -1;
        }

        std::mt19937_64 rng(seed);
        const int cap = 100000;
        std::vector<std::uint32_t> seqs;
        for (SetMask rest = universe & ~tb.top; rest; rest &= rest - 1)
            seqs.push_back(static_cast<std::uint32_t>(__builtin_ctzll(rest)));
        res.random_max = 0;
        for (std::uint64_t e = 0; e < episodes; ++e) {
            SetMask s = tb.top;
            for (auto q : seqs)
                if (rng() & 1u) s |= SetMask{1} << q;
            int steps = 0;
            while (s != tb.top) {
                SetMask movable = s & ~tb.top;
                SetMask t = 0;
                while (!t)
                    for (SetMask rest = movable; rest; rest &= rest - 1)
                        if (rng() & 1u) t |= rest & (~rest + 1);
                SetMask u = union_mask(tb, s, t);
                SetMask n = tb.top;
                for (SetMask rest = u; rest; rest &= rest - 1) {
                    auto q = static_cast<std::uint32_t>(__builtin_ctzll(rest));
                    if (rng() & 1u) {
                        n |= SetMask{1} << q;
                        continue;
                    }
                    std::vector<std::uint32_t> ups;
                    for (SetMask r2 = tb.up[q]; r2; r2 &= r2 - 1)
                        ups.push_back(static_cast<std::uint32_t>(__builtin_ctzll(r2)));
                    n |= SetMask{1} << ups[rng() % ups.size()];
                }
                s = n;
                if (++steps >= cap) {
                    res.random_hit_cap = true;
                    break;
                }
            }
            res.random_max = std::max(res.random_max, steps);
            if (res.random_hit_cap) break;
        }
        res.episodes = episodes;
    }
    return res;
}

namespace {

struct SublemmaGame {
    int n;
    bool allow_empty;
    std::uint32_t full, target;
    std::vector<int> depth, color;
    std::vector<std::uint32_t> succ;
    bool cycle = false;

    SublemmaGame(int n_, bool empty)
        : n(n_), allow_empty(empty), full((std::uint32_t{1} << n_) - 1), target(std::uint32_t{1} << (n_ - 1)),
          depth(full + 1, -2), color(full + 1, 0), succ(full + 1, 0) {}

    int solve(std::uint32_t s) {
        if (s == target) return 0;
        if (depth[s] != -2) return depth[s];
        color[s] = 1;
        int d = -1;
        for (std::uint32_t c = s; c; c = (c - 1) & s) {
            // W is the union of the replacement sets; each changed x needs W above x unless empty sets are allowed
            int lo = __builtin_ctz(c);
            int hi = 31 - __builtin_clz(c);
            std::uint32_t above = full & ~((std::uint32_t{2} << lo) - 1);
            std::uint32_t need = full & ~((std::uint32_t{2} << hi) - 1);
            std::uint32_t base = s & ~c;
            for (std::uint32_t w = above;; w = (w - 1) & above) {
                if (allow_empty || (w & need)) {
                    std::uint32_t nx = base | w;
                    if (color[nx] == 1) {
                        cycle = true;
                    } else {
                        int sub = solve(nx);
                        if (sub >= 0 && sub + 1 > d) {
                            d = sub + 1;
                            succ[s] = nx;
                        }
                    }
                }
                if (w == 0) break;
            }
        }
        color[s] = 2;
        depth[s] = d;
        return d;
    }
};

}  // namespace

SublemmaResult sublemma_solve(int n) {
    if (n < 1 || n > 5) throw InputError("sublemma solver supports 1 <= n <= 5");
    SublemmaResult res;
    res.n = n;
    res.bound = (std::uint64_t{1} << (n - 1)) - 1;
    SublemmaGame game(n, false);
    std::uint32_t best_start = game.target;
    for (std::uint32_t s = 0; s <= game.full; ++s) {
        int d = game.solve(s);
        if (d > res.max_steps) {
            res.max_steps = d;
            best_start = s;
        }
    }
    res.cycle = game.cycle;
    for (std::uint32_t s = best_start;; s = game.succ[s]) {
        std::vector<int> elems;
        for (int k = 0; k < n; ++k)
            if ((s >> k) & 1u) elems.push_back(k);
        res.witness.push_back(elems);
        if (s == game.target) break;
    }
    SublemmaGame literal(n, true);
    for (std::uint32_t s = 0; s <= literal.full; ++s) res.empty_replacement_max = std::max(res.empty_replacement_max, literal.solve(s));
    return res;
}

JumpReport jumpdelta_check(const ISequence& s, int p) {
    const int len = s.length;
    if (p <= 0 || p >= len || !s.plus(p)) throw InputError("deletion must target a plus at a nonzero position");
    SequenceAnalysis a = analyze(s);
    auto cluster_of = [&](const SequenceAnalysis& an, int len_, int pos) -> std::optional<Cluster> {
        for (const auto& c : an.clusters)
            for (int k = c.start; k <= c.end; ++k)
                if (k % len_ == pos) return c;
        return std::nullopt;
    };
    Cluster home = *cluster_of(a, len, p);
    if (home.size() < 2) throw InputError("deletion must come from a cluster of length at least 2");
    Contraction c = contract(s, p);
    JumpReport rep;
    rep.before = s;
    rep.after = c.result;
    rep.deleted = p;
    SequenceAnalysis b = analyze(c.result);
    auto image = [&](const Cluster& cl) -> std::optional<Cluster> {
        for (int k = cl.start; k <= cl.end; ++k)
            if (k % len != p) return cluster_of(b, c.result.length, c.index_map[k % len]);
        return std::nullopt;
    };
    rep.from_initial = home == *a.initial;
    rep.initial_is_image = b.initial && image(*a.initial) == b.initial;
    for (const auto& cl : a.clusters)
        if (cl.start == s.i() && !(cl == *a.initial) && p == s.i()) rep.clause_a_condition = true;
    rep.clause_a_holds = rep.initial_is_image != rep.clause_a_condition;
    rep.clause_b_holds = true;
    for (const auto& cl : a.clusters) {
        bool has_zero = false;
        for (int k = cl.start; k <= cl.end; ++k)
            if (k % len == 0) has_zero = true;
        if (!has_zero) continue;
        auto im = image(cl);
        bool ok = false;
        if (im)
            for (int k = im->start; k <= im->end; ++k)
                if (k % c.result.length == 0) ok = true;
        if (!ok) rep.clause_b_holds = false;
    }
    rep.clause_c_holds = !rep.from_initial || rep.initial_is_image;
    return rep;
}

}  // namespace descent
