#include "ringsolve/linsys.hpp"

#include <map>
#include <numeric>

namespace ringsolve {

// ---------------------------------------------------------------------------
// Chain rings

ChainContext::ChainContext(RingPtr ring) : ring_(std::move(ring)) {
    const FiniteRing& R = *ring_;
    if (!R.commutative())
        fail(ErrorKind::PreconditionViolation, R.spec() + " is not a chain ring");
    auto cd = chain_data(R);
    if (!cd)
        fail(ErrorKind::PreconditionViolation, R.spec() + " is not a chain ring");
    data_ = *cd;
    pows_.push_back(R.one());
    for (unsigned t = 1; t <= data_.n; ++t)
        pows_.push_back(R.mul(pows_.back(), data_.pi));
    val_.assign(R.size(), data_.n);
    unit_.assign(R.size(), R.one());
    std::vector<char> seen(R.size(), 0);
    seen[R.zero().id] = 1;
    const auto us = units(R);
    for (unsigned t = 0; t < data_.n; ++t)
        for (Elem u : us) {
            const Elem x = R.mul(pows_[t], u);
            if (!seen[x.id]) {
                seen[x.id] = 1;
                val_[x.id] = t;
                unit_[x.id] = u;
            }
        }
    for (Elem x : R.elements())
        if (!seen[x.id])
            fail(ErrorKind::InternalError, R.name(x) + " is not of the form pi^t * unit");
}

Elem ChainContext::quotient(Elem b, Elem a) const {
    const FiniteRing& R = *ring_;
    if (b == R.zero())
        return R.zero();
    if (!divides(a, b))
        fail(ErrorKind::InternalError, R.name(a) + " does not divide " + R.name(b));
    const Elem uinv = *R.inverse(unit_[a.id]);
    return R.mul(pows_[val_[b.id] - val_[a.id]], R.mul(unit_[b.id], uinv));
}

HermiteResult hermite_normal_form(const RingPtr& ring, const DenseMatrix& A) {
    return hermite_normal_form(ChainContext(ring), A);
}

HermiteResult hermite_normal_form(const ChainContext& ctx, const DenseMatrix& A) {
    const FiniteRing& R = *ctx.ring();
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    for (const auto& row : A)
        if (row.size() != n)
            fail(ErrorKind::InvalidArgument, "matrix rows have different lengths");
    HermiteResult h;
    h.reduced = A;
    h.S.assign(m, std::vector<Elem>(m, R.zero()));
    for (std::size_t i = 0; i < m; ++i)
        h.S[i][i] = R.one();
    h.perm.resize(n);
    std::iota(h.perm.begin(), h.perm.end(), 0u);
    auto& Q = h.reduced;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // Pivot: least valuation, then table order, then position.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Elem x = Q[i][j];
                if (x == R.zero())
                    continue;
                if (pi == m) {
                    pi = i;
                    pj = j;
                    continue;
                }
                const Elem best = Q[pi][pj];
                const unsigned vx = ctx.valuation(x), vb = ctx.valuation(best);
                if (vx < vb || (vx == vb && x.id < best.id)) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m)
            break;
        std::swap(Q[t], Q[pi]);
        std::swap(h.S[t], h.S[pi]);
        if (pj != t) {
            for (auto& row : Q)
                std::swap(row[t], row[pj]);
            std::swap(h.perm[t], h.perm[pj]);
        }
        const Elem a = Q[t][t];
        for (std::size_t i = t + 1; i < m; ++i) {
            if (Q[i][t] == R.zero())
                continue;
            const Elem q = ctx.quotient(Q[i][t], a);
            for (std::size_t j = t; j < n; ++j)
                Q[i][j] = R.sub(Q[i][j], R.mul(q, Q[t][j]));
            for (std::size_t j = 0; j < m; ++j)
                h.S[i][j] = R.sub(h.S[i][j], R.mul(q, h.S[t][j]));
        }
        h.diag.push_back(a);
        h.rank = t + 1;
    }
    return h;
}

bool check_witness(const ChainContext& ctx, const LinSystem& s, std::span<const Elem> x) {
    const FiniteRing& R = *s.ring;
    if (x.size() != s.num_rows())
        return false;
    std::vector<Elem> col(s.num_cols(), R.zero());
    Elem rhs = R.zero();
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        for (const Term& t : s.A[i])
            col[t.col] = R.add(col[t.col], R.mul(x[i], t.coeff));
        rhs = R.add(rhs, R.mul(x[i], s.b[i]));
    }
    for (Elem c : col)
        if (c != R.zero())
            return false;
    return rhs == ctx.socle();
}

Certificate solve_chain(const LinSystem& s) { return solve_chain(ChainContext(s.ring), s); }

Certificate solve_chain(const ChainContext& ctx, const LinSystem& s) {
    const FiniteRing& R = *s.ring;
    const std::size_t m = s.num_rows(), n = s.num_cols();
    DenseMatrix A(m, std::vector<Elem>(n, R.zero()));
    for (std::size_t i = 0; i < m; ++i)
        for (const Term& t : s.A[i])
            A[i][t.col] = t.coeff;
    const HermiteResult h = hermite_normal_form(ctx, A);
    std::vector<Elem> b2(m, R.zero());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            b2[i] = R.add(b2[i], R.mul(h.S[i][k], s.b[k]));

    for (std::size_t i = 0; i < m; ++i) {
        const bool ok = i < h.rank ? ctx.divides(h.diag[i], b2[i]) : b2[i] == R.zero();
        if (ok)
            continue;
        // Scale row i of S so that b'_i becomes pi^(n-1).
        const unsigned v = ctx.valuation(b2[i]);
        const Elem c = R.mul(ctx.pi_power(ctx.data().n - 1 - v), *R.inverse(ctx.unit_part(b2[i])));
        Witness w;
        w.label = "chain";
        w.chain_ring = s.ring;
        w.digest = digest(s);
        for (std::size_t k = 0; k < m; ++k)
            w.coeffs.push_back(R.mul(c, h.S[i][k]));
        Certificate cert;
        cert.verdict = Verdict::Unsolvable;
        cert.witness = std::move(w);
        return cert;
    }

    std::vector<Elem> y(n, R.zero());
    for (std::size_t t = h.rank; t-- > 0;) {
        Elem rhs = b2[t];
        for (std::size_t j = t + 1; j < n; ++j)
            rhs = R.sub(rhs, R.mul(h.reduced[t][j], y[j]));
        y[t] = ctx.quotient(rhs, h.diag[t]);
    }
    Certificate cert;
    cert.assignment.assign(n, R.zero());
    for (std::size_t t = 0; t < n; ++t)
        cert.assignment[h.perm[t]] = y[t];
    if (!eval_system(s, cert.assignment))
        fail(ErrorKind::InternalError, "back-substitution produced a non-solution");
    return cert;
}

bool eval_system(const LinSystem& s, const Certificate& cert) {
    return cert.verdict == Verdict::Solvable && eval_system(s, std::span<const Elem>(cert.assignment));
}

// ---------------------------------------------------------------------------
// Commutative rings

CommutativeSolver::CommutativeSolver(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_->commutative())
        fail(ErrorKind::PreconditionViolation, "solve_commutative requires a commutative ring");
    for (auto& local : decompose_local(ring_)) {
        const auto params = canonical_params(*local.ring);
        RingOrder order = canonical_order(local.ring, params.alpha, params.pis);
        CyclicFrame frame = make_cyclic_frame(local.ring, order.sorted());
        ChainContext chain(frame.target);
        summands_.push_back(Summand{std::move(local), std::move(order), std::move(frame), std::move(chain)});
    }
}

void CommutativeSolver::check_shape(const LinSystem& s) const {
    if (!same_ring(*s.ring, *ring_))
        fail(ErrorKind::InvalidArgument, "system is over " + s.ring->spec() + ", solver over " + ring_->spec());
}

std::vector<ReductionOutput> CommutativeSolver::reductions(const LinSystem& s) const {
    check_shape(s);
    std::vector<ReductionOutput> out;
    for (const auto& sm : summands_)
        out.push_back(ring_to_cyclic(project_to_local(s, sm.local), sm.frame));
    return out;
}

std::vector<ChainComponent> CommutativeSolver::reduce(const LinSystem& s) const {
    std::vector<ChainComponent> out;
    auto reds = reductions(s);
    for (std::size_t i = 0; i < reds.size(); ++i)
        out.push_back({"e=" + ring_->name(summands_[i].local.idempotent), reds[i].lin()});
    return out;
}

Certificate CommutativeSolver::solve(const LinSystem& s) const {
    const FiniteRing& R = *ring_;
    const auto reds = reductions(s);
    std::vector<Elem> x(s.num_cols(), R.zero());
    for (std::size_t i = 0; i < reds.size(); ++i) {
        const LinSystem& chain_sys = reds[i].lin();
        Certificate part = solve_chain(summands_[i].chain, chain_sys);
        if (part.verdict == Verdict::Unsolvable) {
            part.witness->component = i;
            part.witness->label = "e=" + R.name(summands_[i].local.idempotent);
            return part;
        }
        const auto local = reds[i].backward(part.assignment);
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = R.add(x[j], summands_[i].local.embed[local[j].id]);
    }
    if (!eval_system(s, x))
        fail(ErrorKind::InternalError, "pipeline solution does not satisfy the source system");
    Certificate cert;
    cert.assignment = std::move(x);
    return cert;
}

namespace {

bool verify_against(const std::vector<ChainComponent>& comps, const Certificate& cert,
                    const std::function<const ChainContext&(std::size_t)>& context) {
    if (!cert.witness)
        fail(ErrorKind::InvalidCertificate, "unsolvable certificate without witness");
    const Witness& w = *cert.witness;
    if (w.component >= comps.size())
        fail(ErrorKind::InvalidCertificate, "witness names component " + std::to_string(w.component) + " of " +
                                                std::to_string(comps.size()));
    const LinSystem& sys = comps[w.component].system;
    if (w.coeffs.size() != sys.num_rows())
        fail(ErrorKind::InvalidCertificate, "witness length does not match the reduced system");
    for (Elem e : w.coeffs)
        if (e.id >= sys.ring->size())
            fail(ErrorKind::InvalidCertificate, "witness entry out of range");
    if (digest(sys) != w.digest)
        return false;
    return check_witness(context(w.component), sys, w.coeffs);
}

void require_assignment(const Certificate& cert, std::size_t cols, std::size_t ring_size) {
    if (cert.assignment.size() != cols)
        fail(ErrorKind::InvalidCertificate, "assignment has " + std::to_string(cert.assignment.size()) +
                                                " values for " + std::to_string(cols) + " variables");
    for (Elem e : cert.assignment)
        if (e.id >= ring_size)
            fail(ErrorKind::InvalidCertificate, "assignment value out of range");
}

} // namespace

bool CommutativeSolver::verify(const LinSystem& s, const Certificate& cert) const {
    if (cert.verdict == Verdict::Solvable) {
        require_assignment(cert, s.num_cols(), s.ring->size());
        return eval_system(s, std::span<const Elem>(cert.assignment));
    }
    return verify_against(reduce(s), cert, [this](std::size_t i) -> const ChainContext& { return summands_[i].chain; });
}

Certificate solve_commutative(const LinSystem& s) { return CommutativeSolver(s.ring).solve(s); }

bool verify_certificate(const LinSystem& s, const Certificate& cert) { return CommutativeSolver(s.ring).verify(s, cert); }

// ---------------------------------------------------------------------------
// Systems split over cyclic prime-power components

namespace {

struct PrimePowerComponent {
    std::size_t factor;   // cyclic factor index
    std::uint64_t modulus; // q^e dividing the factor order
};

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr) {
        const std::int64_t q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (r != 1)
        fail(ErrorKind::InternalError, "CRT moduli are not coprime");
    return static_cast<std::uint64_t>((t % static_cast<std::int64_t>(m) + static_cast<std::int64_t>(m)) %
                                      static_cast<std::int64_t>(m));
}

// x mod prod(moduli) from residues modulo pairwise coprime moduli.
std::uint64_t crt(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& moduli) {
    std::uint64_t M = 1;
    for (auto q : moduli)
        M *= q;
    unsigned __int128 x = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const std::uint64_t Mi = M / moduli[i];
        x += static_cast<unsigned __int128>(residues[i]) * Mi % M * inverse_mod(Mi % moduli[i], moduli[i]);
        x %= M;
    }
    return static_cast<std::uint64_t>(x);
}

std::vector<std::uint64_t> prime_power_split(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (auto [p, k] : factorize(n)) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i)
            q *= p;
        out.push_back(q);
    }
    return out;
}

Elem residue(std::uint64_t v) { return Elem{static_cast<std::uint32_t>(v)}; }

struct GroupSplit {
    CyclicDecomposition dec;
    std::vector<PrimePowerComponent> parts;
    std::vector<ChainComponent> components;
};

GroupSplit split_group_system(const GroupSystem& s) {
    GroupSplit g;
    g.dec = group_decompose_cyclic(*s.group);
    for (std::size_t y = 0; y < g.dec.rank(); ++y)
        for (std::uint64_t q : prime_power_split(g.dec.factors()[y].order)) {
            LinSystem sys(build_zmod(q));
            sys.cols = s.cols;
            for (std::size_t i = 0; i < s.num_rows(); ++i) {
                std::vector<Term> terms;
                for (auto c : s.A[i])
                    terms.push_back({c, residue(1)});
                sys.add_row(s.rows[i], std::move(terms), residue(g.dec.coords(s.b[i])[y] % q));
            }
            g.parts.push_back({y, q});
            g.components.push_back({"y=" + std::to_string(y + 1) + " Z/" + std::to_string(q), std::move(sys)});
        }
    return g;
}

struct NumericalSplit {
    std::uint64_t d = 1;
    std::vector<std::uint64_t> moduli;
    std::vector<ChainComponent> components;
};

// One congruence system over Z/d (multiplier d/order per component), split
// by CRT into prime-power moduli.
NumericalSplit split_numerical_system(const NumericalSystem& s) {
    NumericalSplit out;
    const CyclicDecomposition dec = group_decompose_cyclic(*s.group);
    out.d = s.group->exponent();
    out.moduli = prime_power_split(out.d);
    for (std::uint64_t q : out.moduli) {
        LinSystem sys(build_zmod(q));
        sys.cols = s.cols;
        for (std::size_t i = 0; i < s.num_rows(); ++i)
            for (std::size_t y = 0; y < dec.rank(); ++y) {
                const std::uint64_t mult = out.d / dec.factors()[y].order;
                std::vector<Term> terms;
                for (const Term& t : s.A[i]) {
                    const std::uint64_t v = mult * dec.coords(t.coeff)[y] % out.d % q;
                    if (v)
                        terms.push_back({t.col, residue(v)});
                }
                sys.add_row(s.rows[i] + "#" + std::to_string(y + 1), std::move(terms),
                            residue(mult * dec.coords(s.b[i])[y] % out.d % q));
            }
        out.components.push_back({"Z/" + std::to_string(q), std::move(sys)});
    }
    return out;
}

Certificate unsolvable_from(Certificate part, std::size_t index, const std::string& label) {
    part.witness->component = index;
    part.witness->label = label;
    return part;
}

} // namespace

std::vector<ChainComponent> chain_components(const GroupSystem& s) { return split_group_system(s).components; }

Certificate solve_group(const GroupSystem& s) {
    const AbelianGroup& G = *s.group;
    const GroupSplit split = split_group_system(s);
    const std::size_t k = split.dec.rank();
    // residues[y][j] per prime-power modulus of factor y
    std::vector<std::vector<std::vector<std::uint64_t>>> residues(k);
    std::vector<std::vector<std::uint64_t>> moduli(k);
    for (std::size_t c = 0; c < split.components.size(); ++c) {
        const LinSystem& sys = split.components[c].system;
        Certificate part = solve_chain(ChainContext(sys.ring), sys);
        if (part.verdict == Verdict::Unsolvable)
            return unsolvable_from(std::move(part), c, split.components[c].label);
        std::vector<std::uint64_t> vals;
        for (Elem e : part.assignment)
            vals.push_back(e.id);
        residues[split.parts[c].factor].push_back(std::move(vals));
        moduli[split.parts[c].factor].push_back(split.parts[c].modulus);
    }
    Certificate cert;
    cert.assignment.assign(s.num_cols(), G.zero());
    for (std::size_t y = 0; y < k; ++y)
        for (std::size_t j = 0; j < s.num_cols(); ++j) {
            std::vector<std::uint64_t> r;
            for (const auto& vals : residues[y])
                r.push_back(vals[j]);
            const std::uint64_t v = crt(r, moduli[y]);
            cert.assignment[j] =
                G.add(cert.assignment[j], G.times(static_cast<std::int64_t>(v), split.dec.factors()[y].generator));
        }
    if (!eval_system(s, cert.assignment))
        fail(ErrorKind::InternalError, "group pipeline produced a non-solution");
    return cert;
}

bool verify_certificate(const GroupSystem& s, const Certificate& cert) {
    if (cert.verdict == Verdict::Solvable) {
        require_assignment(cert, s.num_cols(), s.group->size());
        return eval_system(s, std::span<const Elem>(cert.assignment));
    }
    const auto comps = chain_components(s);
    std::map<std::size_t, ChainContext> ctx;
    return verify_against(comps, cert, [&](std::size_t i) -> const ChainContext& {
        return ctx.try_emplace(i, comps[i].system.ring).first->second;
    });
}

Certificate solve_numerical(const NumericalSystem& s) {
    const NumericalSplit split = split_numerical_system(s);
    std::vector<std::vector<std::uint64_t>> vals(s.num_cols());
    for (std::size_t c = 0; c < split.components.size(); ++c) {
        const LinSystem& sys = split.components[c].system;
        Certificate part = solve_chain(ChainContext(sys.ring), sys);
        if (part.verdict == Verdict::Unsolvable)
            return unsolvable_from(std::move(part), c, split.components[c].label);
        for (std::size_t j = 0; j < s.num_cols(); ++j)
            vals[j].push_back(part.assignment[j].id);
    }
    Certificate cert;
    for (std::size_t j = 0; j < s.num_cols(); ++j)
        cert.assignment.push_back(residue(crt(vals[j], split.moduli)));
    if (!eval_system(s, cert.assignment))
        fail(ErrorKind::InternalError, "numerical pipeline produced a non-solution");
    return cert;
}

std::vector<ChainComponent> chain_components(const NumericalSystem& s) {
    return split_numerical_system(s).components;
}

bool verify_certificate(const NumericalSystem& s, const Certificate& cert) {
    if (cert.verdict == Verdict::Solvable) {
        require_assignment(cert, s.num_cols(), s.scalars->size());
        return eval_system(s, std::span<const Elem>(cert.assignment));
    }
    const auto comps = chain_components(s);
    std::map<std::size_t, ChainContext> ctx;
    return verify_against(comps, cert, [&](std::size_t i) -> const ChainContext& {
        return ctx.try_emplace(i, comps[i].system.ring).first->second;
    });
}

std::vector<ChainComponent> chain_components(const TwoSidedSystem& s) {
    const auto red = twosided_to_numerical(s);
    return split_numerical_system(std::get<NumericalSystem>(red.target)).components;
}

Certificate solve_twosided(const TwoSidedSystem& s) {
    const auto red = twosided_to_numerical(s);
    Certificate cert = solve_numerical(std::get<NumericalSystem>(red.target));
    if (cert.verdict == Verdict::Unsolvable)
        return cert;
    cert.assignment = red.backward(cert.assignment);
    if (!eval_system(s, cert.assignment))
        fail(ErrorKind::InternalError, "two-sided pipeline produced a non-solution");
    return cert;
}

bool verify_certificate(const TwoSidedSystem& s, const Certificate& cert) {
    if (cert.verdict == Verdict::Solvable) {
        require_assignment(cert, s.num_cols(), s.ring->size());
        return eval_system(s, std::span<const Elem>(cert.assignment));
    }
    const auto comps = chain_components(s);
    std::map<std::size_t, ChainContext> ctx;
    return verify_against(comps, cert, [&](std::size_t i) -> const ChainContext& {
        return ctx.try_emplace(i, comps[i].system.ring).first->second;
    });
}

} // namespace ringsolve
