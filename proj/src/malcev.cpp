#include "nilpot/malcev.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace nilpot {

namespace {

void require_same_algebra(const MGroupElement &a, const MGroupElement &b)
{
    if (a.alg != b.alg)
        throw std::invalid_argument("group elements over different algebras");
}

BracketFn quotient_bracket(const QuotientAlgebra &alg)
{
    return [&alg](const LieElement &u, const LieElement &v) { return alg.bracket_q(u, v); };
}

} // namespace

MGroupElement group_elem(const QuotientAlgebra &alg, const LieElement &v)
{
    return {&alg, alg.reduce(v)};
}

MGroupElement gmul(const MGroupElement &a, const MGroupElement &b)
{
    require_same_algebra(a, b);
    const QuotientAlgebra &alg = *a.alg;
    return {&alg, evaluate_series(*alg.law, alg.law->bch_series, a.v, b.v,
                                  quotient_bracket(alg))};
}

MGroupElement ginv(const MGroupElement &a) { return {a.alg, negate(a.v)}; }

MGroupElement gcommutator(const MGroupElement &a, const MGroupElement &b)
{
    require_same_algebra(a, b);
    const QuotientAlgebra &alg = *a.alg;
    return {&alg, evaluate_series(*alg.law, alg.law->gcomm_series, a.v, b.v,
                                  quotient_bracket(alg))};
}

MGroupElement gpower(const MGroupElement &a, const Int &k) { return {a.alg, scale(rat(k), a.v)}; }

static MGroupElement gpower_rat(const MGroupElement &a, const Rat &t)
{
    return {a.alg, scale(t, a.v)};
}

MGroupElement gcommutator_left_normed(const std::vector<MGroupElement> &as)
{
    if (as.empty())
        throw std::invalid_argument("gcommutator_left_normed: empty argument list");
    MGroupElement r = as[0];
    for (size_t k = 1; k < as.size(); ++k)
        r = gcommutator(r, as[k]);
    return r;
}

namespace {

// Ordering of quotient coordinates: ambient (degree, lex) basis index.
int leading(const MGroupElement &g) { return g.v.leading_index(); }

struct ClosureState {
    const QuotientAlgebra *alg;
    std::map<int, MGroupElement> rows; // keyed by leading index
    std::deque<MGroupElement> work;
    long events = 0;
    long guard;

    explicit ClosureState(const QuotientAlgebra &a) : alg(&a)
    {
        guard = long(a.dim()) << std::min(a.class_bound(), 20);
        if (guard < 1024)
            guard = 1024;
    }

    void bump()
    {
        if (++events > guard)
            throw std::logic_error("subgroup_closure: iteration bound exceeded (bug)");
    }

    void push(const MGroupElement &g)
    {
        if (!g.v.is_zero())
            work.push_back(g);
    }

    void enqueue_commutators(const MGroupElement &g)
    {
        for (const auto &[q, r] : rows)
            if (!(r == g))
                push(gcommutator(g, r));
    }

    void insert(MGroupElement g)
    {
        while (!g.v.is_zero()) {
            int p = leading(g);
            auto it = rows.find(p);
            if (it == rows.end()) {
                bump();
                if (g.v.terms.front().second < 0)
                    g = ginv(g);
                rows.emplace(p, g);
                enqueue_commutators(g);
                return;
            }
            MGroupElement r = it->second; // copy: the map may be modified below
            Rat a = g.v.coeff(p), b = r.v.coeff(p);
            Rat ratio = a / b;
            if (is_integer(ratio)) {
                g = gmul(gpower(r, -to_int(ratio)), g);
                continue;
            }
            // refine the leading-coefficient lattice at p: the subgroup meets
            // coordinate p in (gcd of numerators over the common denominator) Z
            bump();
            Int ad = a.get_den(), bd = b.get_den();
            Int d = lcm(ad, bd);
            Int an = a.get_num() * (d / ad);
            Int bn = b.get_num() * (d / bd);
            Int g0, s, t;
            mpz_gcdext(g0.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), bn.get_mpz_t(),
                       an.get_mpz_t());
            MGroupElement h = gmul(gpower(r, s), gpower(g, t));
            assert(leading(h) == p);
            rows.erase(it);
            if (h.v.terms.front().second < 0)
                h = ginv(h);
            rows.emplace(p, h);
            enqueue_commutators(h);
            push(r);
            push(g);
            return;
        }
    }

    void drain()
    {
        while (!work.empty()) {
            MGroupElement g = work.front();
            work.pop_front();
            insert(std::move(g));
        }
    }

    PolycyclicSequence finish(std::vector<MGroupElement> gens)
    {
        PolycyclicSequence h;
        h.alg = alg;
        h.gens = std::move(gens);
        for (auto &[p, r] : rows)
            h.rows.push_back(r);
        return h;
    }
};

} // namespace

std::optional<std::vector<Int>> collect(const PolycyclicSequence &h, const MGroupElement &g)
{
    std::vector<Int> exps(h.rows.size());
    MGroupElement w = g;
    for (size_t k = 0; k < h.rows.size(); ++k) {
        if (w.v.is_zero())
            return exps;
        int p = leading(w);
        int rp = leading(h.rows[k]);
        if (p < rp)
            return std::nullopt;
        if (p > rp)
            continue;
        Rat ratio = w.v.coeff(p) / h.rows[k].v.coeff(p);
        if (!is_integer(ratio))
            return std::nullopt;
        exps[k] = to_int(ratio);
        w = gmul(gpower(h.rows[k], -exps[k]), w);
    }
    if (!w.v.is_zero())
        return std::nullopt;
    return exps;
}

PolycyclicSequence subgroup_closure(const QuotientAlgebra &alg, std::vector<MGroupElement> gens)
{
    ClosureState st(alg);
    std::vector<MGroupElement> kept;
    for (auto &g : gens) {
        if (g.alg != &alg)
            throw std::invalid_argument("subgroup_closure: algebra mismatch");
        if (!g.v.is_zero())
            kept.push_back(g);
    }
    for (const auto &g : kept)
        st.push(g);
    st.drain();

    // certify: every pairwise commutator and every generator collects; feed
    // back anything that does not and sweep again
    for (int pass = 0;; ++pass) {
        if (pass > 64)
            throw std::logic_error("subgroup_closure: certification did not stabilize");
        PolycyclicSequence h = st.finish(kept);
        bool clean = true;
        for (size_t i = 0; i < h.rows.size() && clean; ++i)
            for (size_t j = i + 1; j < h.rows.size() && clean; ++j) {
                MGroupElement c = gcommutator(h.rows[i], h.rows[j]);
                if (!collect(h, c)) {
                    st.push(c);
                    clean = false;
                }
            }
        for (const auto &g : kept)
            if (clean && !collect(h, g)) {
                st.push(g);
                clean = false;
            }
        if (clean)
            return h;
        st.drain();
    }
}

PolycyclicSequence gamma_subgroup(const PolycyclicSequence &h, int i)
{
    const QuotientAlgebra &alg = *h.alg;
    int cls = alg.class_bound();
    if (i < 1 || i > cls + 1)
        throw std::invalid_argument("gamma_subgroup: level out of range");
    if (i == 1)
        return h;
    // left-normed commutators of weight w in the generators, all tuples
    std::vector<MGroupElement> cur = h.gens;
    std::vector<MGroupElement> collected;
    for (int w = 2; w <= cls; ++w) {
        std::vector<MGroupElement> next;
        for (const auto &c : cur)
            for (const auto &g : h.gens) {
                MGroupElement x = gcommutator(c, g);
                if (!x.v.is_zero())
                    next.push_back(x);
            }
        if (w >= i)
            for (const auto &x : next)
                collected.push_back(x);
        cur = std::move(next);
        if (cur.empty())
            break;
    }
    PolycyclicSequence s = subgroup_closure(alg, collected);
    s.gens = collected;
    return s;
}

namespace {

std::vector<Int> small_divisors(const Int &n)
{
    // ascending proper divisors of |n| (including 1, excluding |n|)
    Int a = abs(n);
    std::vector<Int> divs;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d != 0)
            continue;
        divs.push_back(d);
        Int e = a / d;
        if (e != d && e != a)
            divs.push_back(e);
    }
    std::sort(divs.begin(), divs.end());
    if (!divs.empty() && divs.back() == a)
        divs.pop_back();
    return divs;
}

const MGroupElement *row_with_pivot(const PolycyclicSequence &s, int p)
{
    for (const auto &r : s.rows)
        if (leading(r) == p)
            return &r;
    return nullptr;
}

// Try to realize an element of h intersect span(s.rows) whose leading part is
// t * r: adjust by rational powers of s-rows at the failing positions until
// every collect exponent over h is integral.
std::optional<MGroupElement> try_root(const PolycyclicSequence &s, const PolycyclicSequence &h,
                                      const MGroupElement &r, const Rat &t)
{
    MGroupElement u = gpower_rat(r, t);
    for (int restarts = 0; restarts <= int(h.rows.size()) + 1; ++restarts) {
        MGroupElement w = u;
        bool adjusted = false;
        for (const auto &hr : h.rows) {
            if (w.v.is_zero())
                break;
            int p = leading(w);
            int hp = leading(hr);
            if (p < hp)
                return std::nullopt; // outside the rational span of h
            if (p > hp)
                continue;
            Rat e = w.v.coeff(p) / hr.v.coeff(p);
            if (is_integer(e)) {
                w = gmul(gpower(hr, -to_int(e)), w);
                continue;
            }
            const MGroupElement *sp = row_with_pivot(s, p);
            if (!sp)
                return std::nullopt; // no room to adjust at this position
            Rat tau = sp->v.coeff(p) / hr.v.coeff(p); // integral: s-rows lie in h
            // shift e to an integer with a rational power of *sp
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
            Rat q = (rat(fl) - e) / tau;
            u = gmul(u, gpower_rat(*sp, q));
            adjusted = true;
            break;
        }
        if (!adjusted) {
            if (!w.v.is_zero())
                return std::nullopt;
            return u;
        }
    }
    return std::nullopt;
}

} // namespace

PolycyclicSequence isolator(const PolycyclicSequence &h, int i)
{
    const QuotientAlgebra &alg = *h.alg;
    if (i == 1)
        return h;
    PolycyclicSequence s = gamma_subgroup(h, i);
    for (int round = 0; round < 10000; ++round) {
        bool changed = false;
        for (const auto &r : std::vector<MGroupElement>(s.rows)) {
            int p = leading(r);
            const MGroupElement *hr = row_with_pivot(h, p);
            if (!hr)
                throw std::logic_error("isolator: row pivot missing from the ambient sequence");
            Rat beta_r = r.v.coeff(p) / hr->v.coeff(p);
            if (!is_integer(beta_r))
                throw std::logic_error("isolator: non-integral pivot index");
            Int beta = to_int(beta_r);
            if (beta == 1)
                continue;
            for (const Int &d : small_divisors(beta)) {
                auto u = try_root(s, h, r, rat(d, beta));
                if (u) {
                    std::vector<MGroupElement> gens = s.rows;
                    gens.push_back(*u);
                    s = subgroup_closure(alg, gens);
                    changed = true;
                    break;
                }
            }
            if (changed)
                break;
        }
        if (!changed)
            return s;
    }
    throw std::logic_error("isolator: saturation did not terminate");
}

IsolatorLevels isolator_levels(const PolycyclicSequence &h)
{
    IsolatorLevels lv;
    int cls = h.alg->class_bound();
    for (int t = 1; t <= cls + 1; ++t)
        lv.taus.push_back(t <= cls ? isolator(h, t)
                                   : subgroup_closure(*h.alg, {}));
    return lv;
}

namespace {

ZMatrix exponent_matrix(const PolycyclicSequence &sub, const PolycyclicSequence &sup)
{
    ZMatrix e(int(sub.rows.size()), int(sup.rows.size()));
    for (size_t k = 0; k < sub.rows.size(); ++k) {
        auto exps = collect(sup, sub.rows[k]);
        if (!exps)
            throw std::logic_error("exponent_matrix: subgroup row fails to collect");
        for (size_t j = 0; j < exps->size(); ++j)
            e.at(int(k), int(j)) = (*exps)[j];
    }
    return e;
}

GradedLieRing::Level level_data(const PolycyclicSequence &tau_t,
                                const PolycyclicSequence &tau_next)
{
    GradedLieRing::Level ld;
    ld.tau = tau_t;
    int s = int(tau_t.rows.size());
    ZMatrix e = exponent_matrix(tau_next, tau_t);
    SnfResult sr = snf_with_transforms(e);
    int k = 0;
    int nmin = std::min(sr.d.rows, sr.d.cols);
    for (int x = 0; x < nmin; ++x)
        if (sr.d.at(x, x) != 0) {
            if (sr.d.at(x, x) != 1 && sr.d.at(x, x) != -1)
                throw std::logic_error("graded_ring: torsion in an isolator quotient");
            ++k;
        }
    ld.torsion_cols = k;
    ld.rank = s - k;
    ld.v = sr.right;
    ld.v_inv = sr.right_inv;
    for (int j = 0; j < ld.rank; ++j) {
        // representative with coordinates = unit vector at free column k+j:
        // exponents over tau_t rows are row (k+j) of right_inv
        MGroupElement rep{tau_t.alg, lie_zero(tau_t.alg->ctx->basis)};
        for (int x = 0; x < s; ++x) {
            const Int &ex = ld.v_inv.at(k + j, x);
            if (ex != 0)
                rep = gmul(rep, gpower(tau_t.rows[x], ex));
        }
        ld.reps.push_back(rep);
    }
    return ld;
}

} // namespace

std::vector<int> GradedLieRing::ranks() const
{
    std::vector<int> r;
    for (const auto &lv : levels)
        r.push_back(lv.rank);
    return r;
}

std::vector<Int> GradedLieRing::coords(int t, const MGroupElement &u) const
{
    const Level &ld = levels.at(t - 1);
    auto exps = collect(ld.tau, u);
    if (!exps)
        throw std::logic_error("GradedLieRing::coords: element not in its isolator level");
    int s = int(ld.tau.rows.size());
    std::vector<Int> y(ld.rank);
    for (int j = 0; j < ld.rank; ++j) {
        Int acc = 0;
        for (int x = 0; x < s; ++x)
            acc += (*exps)[x] * ld.v.at(x, ld.torsion_cols + j);
        y[j] = acc;
    }
    return y;
}

TableAlgebra GradedLieRing::as_table() const
{
    std::vector<int> offset(levels.size() + 1, 0);
    for (size_t t = 0; t < levels.size(); ++t)
        offset[t + 1] = offset[t] + levels[t].rank;
    TableAlgebra t;
    t.dim = offset.back();
    t.table.assign(t.dim, std::vector<SparseVec>(t.dim));
    for (const auto &[key, coords] : sc) {
        auto [i, a, j, b] = key;
        int u = offset[i - 1] + a;
        int v = offset[j - 1] + b;
        SparseVec sv;
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k] != 0)
                sv.emplace_back(offset[i + j - 1] + int(k), rat(coords[k]));
        if (u < v)
            t.table[u][v] = std::move(sv);
        else if (u > v) {
            for (auto &[x, c] : sv)
                c = -c;
            t.table[v][u] = std::move(sv);
        }
    }
    return t;
}

GradedLieRing graded_ring(const PolycyclicSequence &h, bool rational_scalars)
{
    const QuotientAlgebra &alg = *h.alg;
    int cls = alg.class_bound();
    IsolatorLevels lv = isolator_levels(h);

    GradedLieRing g;
    g.rational_scalars = rational_scalars;
    for (int t = 1; t <= cls; ++t)
        g.levels.push_back(level_data(lv.taus[t - 1], lv.taus[t]));

    for (int i = 1; i <= cls; ++i)
        for (int j = i; j <= cls; ++j) {
            if (i + j > cls)
                continue;
            for (int a = 0; a < g.levels[i - 1].rank; ++a)
                for (int b = 0; b < g.levels[j - 1].rank; ++b) {
                    MGroupElement c =
                        gcommutator(g.levels[i - 1].reps[a], g.levels[j - 1].reps[b]);
                    g.sc[{i, a, j, b}] = g.coords(i + j, c);
                }
        }
    return g;
}

bool magnus_check(const PolycyclicSequence &h)
{
    int cls = h.alg->class_bound();
    PolycyclicSequence cur = h;
    for (int i = 1; i <= cls; ++i) {
        PolycyclicSequence next = gamma_subgroup(h, i + 1);
        ZMatrix e = exponent_matrix(next, cur);
        for (const Int &d : snf(e))
            if (d != 0 && d != 1 && d != -1)
                return false;
        cur = std::move(next);
        if (cur.rows.empty())
            break;
    }
    return true;
}

int hirsch(const PolycyclicSequence &h) { return h.size(); }

} // namespace nilpot
