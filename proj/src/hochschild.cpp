#include "descent/hochschild.hpp"

#include <algorithm>
#include <set>

namespace descent {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

SparseRow to_row(const Chain& c, const std::map<Tensor, std::size_t>& index) {
    SparseRow row;
    for (const auto& [t, q] : c) {
        auto it = index.find(t);
        if (it == index.end()) throw VerificationError("differential leaves the slice: " + tensor_string(t));
        if (q.get_den() != 1) throw VerificationError("non-integral differential coefficient");
        row.emplace_back(it->second, q.get_num());
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return row;
}

std::map<Tensor, std::size_t> index_of(const std::vector<Tensor>& basis) {
    std::map<Tensor, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
    return index;
}

std::size_t differential_rank(const DescentInstance& inst, int j, int s, const std::vector<Tensor>& source,
                              const std::map<Tensor, std::size_t>& target) {
    SparseEliminator elim;
    for (const auto& t : source) {
        SparseRow row = to_row(boundary(inst, j, s, t), target);
        if (!row.empty()) elim.insert(std::move(row));
    }
    return elim.rank();
}

}  // namespace

std::int64_t total_degree(const Tensor& t) {
    std::int64_t d = 0;
    for (const auto& b : t) d = checked_add(d, b.degree);
    return d;
}

std::string tensor_string(const Tensor& t) {
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) out += " (x) ";
        out += t[k].to_string();
    }
    return out;
}

bool quotient_ok(const Tensor& t, int s) {
    for (const auto& b : t)
        if (b.degree >= 1 && b.degree <= s - 1) return true;
    return false;
}

void add_term(Chain& c, const Tensor& t, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = c.emplace(t, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second == 0) c.erase(it);
}

void add_chain(Chain& c, const Chain& other, const Rational& factor) {
    for (const auto& [t, q] : other) add_term(c, t, q * factor);
}

const std::vector<BasisMonomial>& SliceCache::monomials(int j, std::int64_t d) {
    auto key = std::make_pair(j, d);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, lambda_basis_slice(inst_, j, d)).first->second;
}

std::vector<Tensor> slice_basis(SliceCache& cache, int j, int i, int s, std::int64_t d, std::size_t budget) {
    std::vector<Tensor> out;
    if (i < 0 || d < 0 || s < 2) return out;
    const int len = i + 1;
    std::vector<std::int64_t> parts(static_cast<std::size_t>(len));
    Tensor current(static_cast<std::size_t>(len));

    auto emit = [&](auto&& self, int k) -> void {
        if (k == len) {
            out.push_back(current);
            if (out.size() > budget) throw BudgetExceeded("slice exceeds " + std::to_string(budget) + " tensors");
            return;
        }
        for (const auto& b : cache.monomials(j, parts[static_cast<std::size_t>(k)])) {
            current[static_cast<std::size_t>(k)] = b;
            self(self, k + 1);
        }
    };
    auto compose = [&](auto&& self, int k, std::int64_t rest, bool low) -> void {
        if (k == len - 1) {
            parts[static_cast<std::size_t>(k)] = rest;
            if (low || (rest >= 1 && rest <= s - 1)) emit(emit, 0);
            return;
        }
        for (std::int64_t e = 0; e <= rest; ++e) {
            if (cache.monomials(j, e).empty()) continue;
            parts[static_cast<std::size_t>(k)] = e;
            self(self, k + 1, rest - e, low || (e >= 1 && e <= s - 1));
        }
    };
    compose(compose, 0, d, false);
    std::sort(out.begin(), out.end());
    return out;
}

Chain face(const DescentInstance& inst, int j, int s, const Tensor& t, int r) {
    Chain out;
    const int len = static_cast<int>(t.size());
    if (len < 2) return out;
    const int q = mod(r, len);
    BasisMonomial left = t[static_cast<std::size_t>(q)];
    BasisMonomial right = t[static_cast<std::size_t>((q + 1) % len)];
    for (const auto& [prod, sign] : multiply_monomials(inst, left, right)) {
        if (!inst.valid(j, prod)) throw VerificationError("product " + prod.to_string() + " leaves ring " + std::to_string(j));
        Tensor next;
        next.reserve(t.size() - 1);
        if (q < len - 1) {
            for (int k = 0; k < q; ++k) next.push_back(t[static_cast<std::size_t>(k)]);
            next.push_back(prod);
            for (int k = q + 2; k < len; ++k) next.push_back(t[static_cast<std::size_t>(k)]);
        } else {
            next.push_back(prod);
            for (int k = 1; k < len - 1; ++k) next.push_back(t[static_cast<std::size_t>(k)]);
        }
        if (quotient_ok(next, s)) add_term(out, next, Rational(sign));
    }
    return out;
}

Chain face(const DescentInstance& inst, int j, int s, const Chain& c, int r) {
    Chain out;
    for (const auto& [t, q] : c) add_chain(out, face(inst, j, s, t, r), q);
    return out;
}

Chain boundary(const DescentInstance& inst, int j, int s, const Tensor& t) {
    Chain out;
    const int len = static_cast<int>(t.size());
    if (len < 2) return out;
    for (int r = 0; r < len; ++r) add_chain(out, face(inst, j, s, t, r), Rational(r % 2 == 0 ? 1 : -1));
    return out;
}

Chain boundary(const DescentInstance& inst, int j, int s, const Chain& c) {
    Chain out;
    for (const auto& [t, q] : c) add_chain(out, boundary(inst, j, s, t), q);
    return out;
}

HomologyRank homology_rank(SliceCache& cache, int j, int i, int s, std::int64_t d) {
    const DescentInstance& inst = cache.instance();
    HomologyRank h;
    const auto source = slice_basis(cache, j, i, s, d);
    h.slice = source.size();
    std::size_t out_rank = 0;
    if (i >= 1) out_rank = differential_rank(inst, j, s, source, index_of(slice_basis(cache, j, i - 1, s, d)));
    h.cycles = h.slice - out_rank;
    h.boundaries = differential_rank(inst, j, s, slice_basis(cache, j, i + 1, s, d), index_of(source));
    if (h.boundaries > h.cycles) throw VerificationError("boundaries exceed cycles");
    h.homology = h.cycles - h.boundaries;
    return h;
}

ImageRank induced_image_rank(SliceCache& cache, int j, int jp, int i, int s, std::int64_t d) {
    const DescentInstance& inst = cache.instance();
    if (j > jp) throw InputError("induced_image_rank needs j <= j'");
    ImageRank res;
    res.source_cycles = homology_rank(cache, j, i, s, d).cycles;
    const auto source = slice_basis(cache, j, i, s, d);
    const std::set<Tensor> in_source(source.begin(), source.end());
    const auto target = slice_basis(cache, jp, i, s, d);
    const auto index = index_of(target);
    SparseEliminator all, projected;
    for (const auto& y : slice_basis(cache, jp, i + 1, s, d)) {
        const Chain b = boundary(inst, jp, s, y);
        SparseRow row = to_row(b, index);
        if (row.empty()) continue;
        all.insert(row);
        SparseRow off;
        for (const auto& [col, q] : row)
            if (!in_source.count(target[col])) off.emplace_back(col, q);
        if (!off.empty()) projected.insert(std::move(off));
    }
    res.target_boundaries = all.rank();
    res.projected_boundaries = projected.rank();
    res.image = res.source_cycles + res.projected_boundaries - res.target_boundaries;
    return res;
}

std::vector<Chain> sample_cycles(SliceCache& cache, int j, int i, std::int64_t d, std::size_t count,
                                 std::mt19937_64& rng, std::size_t pool, int min_high) {
    const DescentInstance& inst = cache.instance();
    const int s = inst.s;
    const int len = i + 1;
    const std::int64_t gamma = inst.gammas.at(static_cast<std::size_t>(j));
    std::vector<Chain> out;
    if (i < 1) throw InputError("sample_cycles needs i >= 1");

    std::vector<std::int64_t> low_degrees;
    for (std::int64_t e = 1; e <= s - 1; ++e)
        if (!cache.monomials(j, e).empty()) low_degrees.push_back(e);
    if (low_degrees.empty()) return out;
    const std::int64_t e1 = low_degrees[std::uniform_int_distribution<std::size_t>(0, low_degrees.size() - 1)(rng)];
    if (d - e1 <= gamma) throw InputError("sample_cycles needs d - (s-1) > gamma_j");

    auto subset = [&](std::vector<BasisMonomial> v) {
        std::shuffle(v.begin(), v.end(), rng);
        if (v.size() > pool) v.resize(pool);
        return v;
    };
    auto sampled = [&](std::int64_t h) {
        std::set<BasisMonomial> got;
        for (std::size_t k = 0; k < 4 * pool && got.size() < pool; ++k)
            if (auto b = sample_monomial(inst, j, static_cast<Slot>(k % 4), h, rng)) got.insert(*b);
        return std::vector<BasisMonomial>(got.begin(), got.end());
    };
    const auto lows = subset(cache.monomials(j, e1));
    const auto zeros = cache.monomials(j, 0);
    const auto high1 = sampled(d - e1);
    std::vector<BasisMonomial> high_a, high_b;
    if (len >= 3 && d - e1 - 2 * (gamma + 1) >= 0) {
        const std::int64_t spare = (d - e1 - 2 * (gamma + 1)) / 2;
        const std::int64_t a = gamma + 1 + std::uniform_int_distribution<std::int64_t>(0, spare)(rng);
        high_a = sampled(a);
        high_b = sampled(d - e1 - a);
    }

    std::set<Tensor> candidates;
    std::vector<const std::vector<BasisMonomial>*> roles(static_cast<std::size_t>(len));
    Tensor current(static_cast<std::size_t>(len));
    auto fill = [&](auto&& self, std::size_t k) -> void {
        if (k == roles.size()) {
            candidates.insert(current);
            return;
        }
        for (const auto& b : *roles[k]) {
            current[k] = b;
            self(self, k + 1);
        }
    };
    for (int p1 = 0; p1 < len; ++p1)
        for (int ph = 0; ph < len; ++ph) {
            if (ph == p1) continue;
            for (int k = 0; k < len; ++k) roles[static_cast<std::size_t>(k)] = &zeros;
            roles[static_cast<std::size_t>(p1)] = &lows;
            roles[static_cast<std::size_t>(ph)] = &high1;
            if (min_high <= 1) fill(fill, 0);
            if (high_a.empty()) continue;
            for (int pb = 0; pb < len; ++pb) {
                if (pb == p1 || pb == ph) continue;
                roles[static_cast<std::size_t>(ph)] = &high_a;
                roles[static_cast<std::size_t>(pb)] = &high_b;
                fill(fill, 0);
                roles[static_cast<std::size_t>(pb)] = &zeros;
            }
        }
    std::vector<Tensor> cols(candidates.begin(), candidates.end());
    if (cols.size() > 400) {
        std::shuffle(cols.begin(), cols.end(), rng);
        cols.resize(400);
    }
    if (cols.empty()) return out;

    std::map<Tensor, std::size_t> rows;
    std::vector<Chain> images;
    for (const auto& t : cols) {
        images.push_back(boundary(inst, j, s, t));
        for (const auto& [u, q] : images.back()) rows.emplace(u, rows.size());
    }
    QMatrix m(rows.size(), QVector(cols.size(), Rational(0)));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [u, q] : images[c]) m[rows.at(u)][c] = q;
    const QMatrix kernel = rows.empty() ? QMatrix{} : nullspace(m, cols.size());
    std::vector<QVector> basis = kernel;
    if (rows.empty())
        for (std::size_t c = 0; c < cols.size(); ++c) {
            QVector e(cols.size(), Rational(0));
            e[c] = 1;
            basis.push_back(e);
        }
    if (basis.empty()) return out;
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t attempt = 0; attempt < 4 * count && out.size() < count; ++attempt) {
        QVector x(cols.size(), Rational(0));
        for (const auto& v : basis) {
            const int c = coef(rng);
            if (c == 0) continue;
            for (std::size_t k = 0; k < x.size(); ++k) x[k] += c * v[k];
        }
        Chain z;
        for (std::size_t k = 0; k < x.size(); ++k) add_term(z, cols[k], x[k]);
        if (z.empty()) continue;
        if (!boundary(inst, j, s, z).empty()) throw VerificationError("sampled chain is not a cycle");
        out.push_back(std::move(z));
    }
    return out;
}

ISequence to_isequence(const Tensor& t, std::int64_t gamma) {
    if (t.empty() || t.size() > 31) throw InputError("tensor length out of range");
    ISequence s{static_cast<int>(t.size()), 0};
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k].degree > gamma) s.mask |= std::uint32_t{1} << k;
    return s;
}

MachineState to_isequences(const Chain& c, std::int64_t gamma, int length) {
    MachineState out;
    for (const auto& [t, q] : c) out.insert(to_isequence(t, gamma));
    out.insert(ISequence::all_plus(length - 1));
    return out;
}

DeltaData delta_data(const Tensor& t, std::int64_t gamma) {
    const SequenceAnalysis a = analyze(to_isequence(t, gamma));
    return {a.l, a.r, a.delta};
}

int chain_delta(const Chain& c, std::int64_t gamma) {
    if (c.empty()) return -1;
    int best = 1 << 30;
    for (const auto& [t, q] : c) best = std::min(best, delta_data(t, gamma).delta);
    return best;
}

std::optional<Format> format_of(const Tensor& t, std::int64_t gamma) {
    const DeltaData dd = delta_data(t, gamma);
    if (!dd.defined()) return std::nullopt;
    const int len = static_cast<int>(t.size());
    Format f;
    f.l = dd.l;
    f.r = dd.r;
    f.fixed.assign(t.begin(), t.end());
    for (int q = dd.l; q <= dd.r; ++q) f.fixed[static_cast<std::size_t>(mod(q, len))] = std::nullopt;
    return f;
}

bool same_format(const Tensor& a, const Tensor& b, std::int64_t gamma) {
    auto fa = format_of(a, gamma), fb = format_of(b, gamma);
    return fa && fb && *fa == *fb;
}

std::optional<Format> chain_format(const Chain& c, std::int64_t gamma) {
    std::optional<Format> common;
    for (const auto& [t, q] : c) {
        auto f = format_of(t, gamma);
        if (!f) return std::nullopt;
        if (common && !(*common == *f)) return std::nullopt;
        common = f;
    }
    return common;
}

Tensor cyclic_shift(const Tensor& t) {
    if (t.empty()) return t;
    Tensor out;
    out.push_back(t.back());
    out.insert(out.end(), t.begin(), t.end() - 1);
    return out;
}

Tensor restrict_tensor(const Tensor& t, const std::vector<int>& indices) {
    const int len = static_cast<int>(t.size());
    if (indices.empty()) throw InputError("empty index set");
    std::set<int> residues;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (k && indices[k] <= indices[k - 1]) throw InputError("index set must be increasing");
        if (!residues.insert(mod(indices[k], len)).second) throw InputError("index set repeats a residue");
    }
    Tensor out;
    for (int s : indices) out.push_back(t[static_cast<std::size_t>(mod(s, len))]);
    return out;
}

Chain restrict(const Chain& c, const std::vector<int>& indices) {
    Chain out;
    for (const auto& [t, q] : c) add_term(out, restrict_tensor(t, indices), q);
    return out;
}

Chain restrict_delta(const Chain& c, std::int64_t gamma) {
    if (c.empty()) return c;
    auto f = chain_format(c, gamma);
    if (!f) throw InputError("restrict_delta: terms do not share a format");
    std::vector<int> window;
    for (int q = f->l; q <= f->r; ++q) window.push_back(q);
    return restrict(c, window);
}

std::string bigstar_cases(const Tensor& lambda, const Tensor& mu, int u, int v, std::int64_t gamma) {
    const int i = static_cast<int>(lambda.size()) - 1;
    const DeltaData a = delta_data(lambda, gamma), b = delta_data(mu, gamma);
    auto fl = format_of(lambda, gamma), fm = format_of(mu, gamma);
    auto flt = format_of(cyclic_shift(lambda), gamma), fmt = format_of(cyclic_shift(mu), gamma);
    auto eq = [](const std::optional<Format>& x, const std::optional<Format>& y) { return x && y && *x == *y; };
    std::string out;
    const bool same = a.l == b.l && a.r == b.r;
    if (same && a.r <= i && eq(fl, fm)) out += 'a';
    if (same && a.r >= i + 1 && u <= i && v <= i && eq(fl, fm)) out += 'b';
    if (same && a.r >= i + 1 && u >= i + 1 && v >= i + 1 && eq(fl, fm)) out += 'c';
    if (a.l == b.l - 1 && a.r == b.r - 1 && a.r >= i + 1 && u <= i && v >= i + 1 && eq(flt, fm)) out += 'd';
    if (a.l == b.l + 1 && a.r == b.r + 1 && a.r >= i + 2 && u >= i + 1 && v <= i && eq(fmt, fl)) out += 'e';
    if (a.l == 0 && b.l == i && a.r + i == b.r && u <= i && v == i && eq(fmt, fl)) out += 'f';
    if (a.l == i && b.l == 0 && a.r == b.r + i && u == i && v <= i && eq(flt, fm)) out += 'g';
    return out;
}

DescentStepRecord descent_step(const DescentInstance& inst, const Chain& z, int j) {
    DescentStepRecord rec;
    rec.j = j;
    rec.z = z;
    if (j < 0 || j >= inst.n) throw InputError("descent_step needs 0 <= j < n");
    const int s = inst.s;
    const std::int64_t gamma = inst.gammas[static_cast<std::size_t>(j)];
    const std::int64_t gamma1 = inst.gammas[static_cast<std::size_t>(j) + 1];
    if (z.empty()) {
        rec.i = -1;
        rec.lifted_in_complex = rec.z1_cycle = rec.kth_summand = rec.cycle0sum = rec.class_sums = rec.zero_sum =
            rec.implication0 = rec.delta_constant = rec.claim_b = true;
        return rec;
    }
    const int len = static_cast<int>(z.begin()->first.size());
    const int i = len - 1;
    rec.i = i;
    if (i < 1) throw InputError("descent_step needs i >= 1");
    const std::int64_t degree = total_degree(z.begin()->first);
    for (const auto& [t, q] : z) {
        if (static_cast<int>(t.size()) != len) throw InputError("chain mixes tensor lengths");
        if (total_degree(t) != degree) throw InputError("chain is not homogeneous");
        if (!quotient_ok(t, s)) throw InputError("tensor violates the quotient condition: " + tensor_string(t));
        for (const auto& b : t)
            if (!inst.valid(j, b)) throw InputError(b.to_string() + " is not in ring " + std::to_string(j));
    }
    if (!boundary(inst, j, s, z).empty()) throw InputError("input chain is not a cycle");
    rec.delta_before = chain_delta(z, gamma);
    if (rec.delta_before < 0) throw InputError("input cycle has delta < 0");
    auto fail = [&](const std::string& what) { rec.failures.push_back(what); };

    int min_count = len + 1;
    for (const auto& [t, q] : z) min_count = std::min(min_count, to_isequence(t, gamma).plus_count());
    for (const auto& [t, q] : z) {
        if (to_isequence(t, gamma).plus_count() != min_count) continue;
        add_term(rec.z_min, t, q);
        const DeltaData dd = delta_data(t, gamma);
        if (1 <= dd.l && dd.l <= dd.r && dd.r <= i)
            add_term(rec.z_prime, t, q);
        else
            add_term(rec.z_second, t, q);
    }
    const Chain& part = rec.z_prime.empty() ? rec.z_second : rec.z_prime;
    const int part_delta = chain_delta(part, gamma);

    Chain kth = Chain{};
    for (const auto& [t, q] : part) {
        DescentLift lift;
        lift.original = t;
        lift.coeff = q;
        lift.delta = delta_data(t, gamma);
        if (lift.delta.delta != part_delta) continue;
        const int r0 = lift.delta.r;
        const int p = mod(r0, len);
        lift.factor = divis_factor(inst, j, t[static_cast<std::size_t>(p)]);
        for (int k = 0; k < len; ++k) {
            if (k == p) {
                lift.lifted.push_back(lift.factor.prime);
                lift.lifted.push_back(lift.factor.central);
            } else {
                lift.lifted.push_back(t[static_cast<std::size_t>(k)]);
            }
        }
        const int shifted_r0 = r0 > i ? r0 + 1 : r0;
        lift.epsilon = mod(shifted_r0, i + 2) % 2 == 0 ? -1 : 1;
        add_term(rec.z_hat, lift.lifted, q * lift.epsilon);
        rec.lifts.push_back(std::move(lift));
    }

    rec.lifted_in_complex = true;
    for (const auto& [t, q] : rec.z_hat) {
        bool ok = quotient_ok(t, s);
        for (const auto& b : t) ok = ok && inst.valid(j + 1, b);
        if (!ok) rec.lifted_in_complex = false;
    }
    if (!rec.lifted_in_complex) fail("lifted tensors leave C_{i+1}(Lambda_{j+1}, s)");

    rec.z1 = z;
    add_chain(rec.z1, boundary(inst, j + 1, s, rec.z_hat));
    rec.z1_cycle = boundary(inst, j + 1, s, rec.z1).empty();
    if (!rec.z1_cycle) fail("z1 is not a cycle");
    rec.delta_after = chain_delta(rec.z1, gamma1);

    auto shift = [&](const DescentLift& l, int r) { return l.delta.r > i ? r + 1 : r; };

    for (const auto& l : rec.lifts) {
        add_term(kth, l.original, l.coeff);
        add_chain(kth, face(inst, j + 1, s, l.lifted, shift(l, l.delta.r)), -l.coeff);
    }
    rec.kth_summand = kth.empty();
    if (!rec.kth_summand) fail("kthsummand identity");

    Chain cyc, zero;
    std::map<Format, Chain> classes;
    std::map<Format, std::set<int>> deltas;
    rec.implication0 = true;
    bool formats_shared = true;
    for (const auto& l : rec.lifts) {
        for (int r = l.delta.l; r <= l.delta.r - 1; ++r) {
            const Rational sign_r(mod(r, i + 1) % 2 == 0 ? 1 : -1);
            const Chain dr = face(inst, j, s, l.original, r);
            add_chain(cyc, dr, sign_r * l.coeff);
            const int rk = shift(l, r);
            const Chain dhat = face(inst, j + 1, s, l.lifted, rk);
            add_chain(zero, dhat, Rational(mod(rk, i + 2) % 2 == 0 ? 1 : -1) * l.epsilon * l.coeff);
            if (dr.empty()) {
                if (!dhat.empty()) rec.implication0 = false;
                continue;
            }
            auto f = chain_format(dr, gamma);
            if (!f) {
                formats_shared = false;
                continue;
            }
            ++rec.window_pairs;
            add_chain(classes[*f], dr, sign_r * l.coeff);
            deltas[*f].insert(mod(rk, i + 2) + mod(shift(l, l.delta.r), i + 2) - mod(r, i + 1));
        }
    }
    rec.format_classes = classes.size();
    rec.cycle0sum = cyc.empty();
    rec.zero_sum = zero.empty();
    rec.class_sums = formats_shared;
    for (const auto& [f, c] : classes)
        if (!c.empty()) rec.class_sums = false;
    rec.delta_constant = formats_shared;
    for (const auto& [f, vals] : deltas)
        if (vals.size() != 1) rec.delta_constant = false;
    if (!rec.cycle0sum) fail("cycle0sum identity");
    if (!rec.class_sums) fail("per-format class sums");
    if (!rec.zero_sum) fail("0sum identity");
    if (!rec.implication0) fail("implication (0)");
    if (!rec.delta_constant) fail("Delta(k,r) not constant on a format class");

    rec.sequences_before = to_isequences(z, gamma, len);
    rec.sequences_after = to_isequences(rec.z1, gamma1, len);
    rec.machine = validate_step(rec.sequences_before, rec.sequences_after);
    rec.claim_b = rec.machine.ok;
    if (!rec.claim_b) fail("Claim B: sequence sets not related by a machine step");
    return rec;
}

bool DescentRun::ok() const {
    for (const auto& s : steps)
        if (!s.ok()) return false;
    return true;
}

DescentRun descend(const DescentInstance& inst, const Chain& z, int j0) {
    DescentRun run;
    run.final_chain = z;
    run.final_ring = j0;
    while (!run.final_chain.empty() && run.final_ring < inst.n) {
        if (chain_delta(run.final_chain, inst.gammas[static_cast<std::size_t>(run.final_ring)]) < 0) break;
        run.steps.push_back(descent_step(inst, run.final_chain, run.final_ring));
        if (!run.steps.back().ok()) break;
        run.final_chain = run.steps.back().z1;
        ++run.final_ring;
    }
    run.reached_zero = run.final_chain.empty();
    return run;
}

}  // namespace descent
