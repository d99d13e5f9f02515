#include "ringsolve/structure.hpp"

#include <algorithm>
#include <numeric>

namespace ringsolve {

namespace {

void require_commutative(const FiniteRing& ring) {
    if (!ring.commutative())
        fail(ErrorKind::Unsupported, "structure theory requires a commutative ring");
}

void require_local(const FiniteRing& ring) {
    if (!is_local(ring))
        fail(ErrorKind::PreconditionViolation, ring.spec() + " is not local");
}

// Membership mask of the ideal generated by gens.
std::vector<char> generated_ideal(const FiniteRing& ring, std::span<const Elem> gens) {
    const std::size_t n = ring.size();
    std::vector<char> in(n, 0);
    in[ring.zero().id] = 1;
    for (Elem g : gens) {
        std::vector<char> multiples(n, 0);
        for (Elem r : ring.elements())
            multiples[ring.mul(r, g).id] = 1;
        std::vector<char> next(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            if (!in[a])
                continue;
            for (std::size_t b = 0; b < n; ++b)
                if (multiples[b])
                    next[ring.add(Elem{static_cast<std::uint32_t>(a)}, Elem{static_cast<std::uint32_t>(b)}).id] = 1;
        }
        in = std::move(next);
    }
    return in;
}

bool generates(const FiniteRing& ring, std::span<const Elem> gens, const std::vector<char>& target) {
    return generated_ideal(ring, gens) == target;
}

std::uint64_t unit_order(const FiniteRing& ring, Elem u) {
    std::uint64_t k = 1;
    for (Elem x = u; x != ring.one(); x = ring.mul(x, u))
        ++k;
    return k;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

bool is_local(const FiniteRing& ring) {
    require_commutative(ring);
    for (Elem e : ring.elements())
        if (ring.mul(e, e) == e && e != ring.zero() && e != ring.one())
            return false;
    return true;
}

std::vector<Elem> base(const FiniteRing& ring) {
    require_commutative(ring);
    const auto ids = idempotents(ring);
    std::vector<Elem> out;
    for (Elem e : ids) {
        if (e == ring.zero())
            continue;
        bool primitive = true;
        for (Elem f : ids) {
            const Elem ef = ring.mul(e, f);
            if (ef != ring.zero() && ef != e) {
                primitive = false;
                break;
            }
        }
        if (primitive)
            out.push_back(e);
    }
    return out;
}

std::vector<LocalSummand> decompose_local(const RingPtr& ring) {
    std::vector<LocalSummand> out;
    for (Elem e : base(*ring)) {
        LocalSummand s;
        s.idempotent = e;
        s.ring = build_summand(ring, e);
        s.embed = std::get<rep::Summand>(s.ring->rep()).members;
        s.project.resize(ring->size());
        for (Elem r : ring->elements()) {
            const Elem er = ring->mul(e, r);
            const auto it = std::lower_bound(s.embed.begin(), s.embed.end(), er);
            s.project[r.id] = Elem{static_cast<std::uint32_t>(it - s.embed.begin())};
        }
        out.push_back(std::move(s));
    }
    return out;
}

LocalData local_data(const FiniteRing& ring) {
    require_local(ring);
    LocalData d;
    for (Elem x : ring.elements())
        if (!ring.is_unit(x))
            d.maximal_ideal.push_back(x);
    std::vector<char> in_m(ring.size(), 0);
    for (Elem x : d.maximal_ideal)
        in_m[x.id] = 1;

    // Cosets r + m numbered by least member.
    std::vector<std::int64_t> coset(ring.size(), -1);
    std::vector<Elem> reps;
    for (Elem r : ring.elements()) {
        if (coset[r.id] >= 0)
            continue;
        const auto id = static_cast<std::int64_t>(reps.size());
        reps.push_back(r);
        for (Elem x : d.maximal_ideal)
            coset[ring.add(r, x).id] = id;
    }
    const std::size_t q = reps.size();
    d.q = q;
    if (q * d.maximal_ideal.size() != ring.size())
        fail(ErrorKind::InternalError, "maximal ideal cosets do not partition the ring");

    FiniteRing::Parts parts;
    parts.rep = rep::Table{};
    parts.spec = ring.spec() + "/m";
    parts.names.resize(q);
    parts.add.resize(q * q);
    parts.mul.resize(q * q);
    for (std::size_t i = 0; i < q; ++i) {
        parts.names[i] = ring.name(reps[i]);
        for (std::size_t j = 0; j < q; ++j) {
            parts.add[i * q + j] = static_cast<FiniteRing::Cell>(coset[ring.add(reps[i], reps[j]).id]);
            parts.mul[i * q + j] = static_cast<FiniteRing::Cell>(coset[ring.mul(reps[i], reps[j]).id]);
        }
    }
    d.residue_field = FiniteRing::assemble(std::move(parts));
    d.projection.resize(ring.size());
    for (Elem r : ring.elements())
        d.projection[r.id] = Elem{static_cast<std::uint32_t>(coset[r.id])};
    return d;
}

std::vector<Elem> minimal_generators_maximal_ideal(const FiniteRing& ring) {
    require_local(ring);
    std::vector<char> target(ring.size(), 0);
    std::vector<Elem> candidates;
    for (Elem x : ring.elements())
        if (!ring.is_unit(x)) {
            target[x.id] = 1;
            if (x != ring.zero())
                candidates.push_back(x);
        }
    if (candidates.empty())
        return {};
    for (std::size_t k = 1; k <= candidates.size(); ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        do {
            std::vector<Elem> gens;
            for (std::size_t i : idx)
                gens.push_back(candidates[i]);
            if (generates(ring, gens, target))
                return gens;
        } while (next_combination(idx, candidates.size()));
    }
    fail(ErrorKind::InternalError, "maximal ideal has no generating tuple");
}

std::optional<ChainData> chain_data(const FiniteRing& ring) {
    require_commutative(ring);
    if (!is_local(ring))
        return std::nullopt;
    const auto gens = minimal_generators_maximal_ideal(ring);
    const std::uint64_t q = ring.size() / (ring.size() - units(ring).size());
    if (gens.empty())
        return ChainData{ring.zero(), 1, q};
    if (gens.size() > 1)
        return std::nullopt;
    return ChainData{gens[0], *nilpotency(ring, gens[0]), q};
}

std::vector<Elem> teichmuller_set(const FiniteRing& ring) {
    require_local(ring);
    const std::uint64_t q = ring.size() / (ring.size() - units(ring).size());
    std::vector<Elem> out;
    for (Elem r : ring.elements())
        if (ring.pow(r, q) == r)
            out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical order

std::span<const std::uint32_t> RingOrder::representation(Elem x) const {
    const std::size_t k = monomials_.size();
    return {repr_.data() + x.id * k, k};
}

Elem RingOrder::evaluate(std::span<const std::uint32_t> coeffs) const {
    const FiniteRing& R = *ring_;
    Elem acc = R.zero();
    for (std::size_t t = 0; t < monomials_.size(); ++t)
        acc = R.add(acc, R.mul(gamma_[coeffs[t]], monomials_[t]));
    return acc;
}

RingOrder canonical_order(const RingPtr& ring, Elem alpha, std::vector<Elem> pis) {
    const FiniteRing& R = *ring;
    const LocalData ld = local_data(R);
    const FiniteRing& F = *ld.residue_field;
    const Elem abar = ld.projection[alpha.id];
    if (abar == F.zero() || unit_order(F, abar) != ld.q - 1)
        fail(ErrorKind::InvalidParameter, R.name(alpha) + " does not project to a primitive residue");
    std::vector<char> target(R.size(), 0);
    for (Elem x : ld.maximal_ideal)
        target[x.id] = 1;
    if (!generates(R, pis, target))
        fail(ErrorKind::InvalidParameter, "generators do not generate the maximal ideal");

    RingOrder ord;
    ord.ring_ = ring;
    ord.alpha_ = alpha;
    ord.pis_ = pis;

    // Gamma order: 0, then the lift of alpha^i for i = 0..q-2.
    const auto gamma = teichmuller_set(R);
    std::vector<std::int64_t> lift_of(F.size(), -1);
    for (Elem g : gamma)
        lift_of[ld.projection[g.id].id] = g.id;
    ord.gamma_.push_back(R.zero());
    Elem power = F.one();
    for (std::uint64_t i = 0; i + 1 < ld.q; ++i) {
        if (lift_of[power.id] < 0)
            fail(ErrorKind::InternalError, "Teichmueller set misses a residue");
        ord.gamma_.push_back(Elem{static_cast<std::uint32_t>(lift_of[power.id])});
        power = F.mul(power, abar);
    }

    std::vector<unsigned> nil;
    for (Elem p : pis)
        nil.push_back(*nilpotency(R, p));
    std::vector<unsigned> e(pis.size(), 0);
    for (;;) {
        Elem mono = R.one();
        for (std::size_t i = 0; i < pis.size(); ++i)
            mono = R.mul(mono, R.pow(pis[i], e[i]));
        if (mono != R.zero()) {
            ord.exponents_.push_back(e);
            ord.monomials_.push_back(mono);
        }
        std::size_t i = pis.size();
        while (i > 0 && ++e[i - 1] == nil[i - 1])
            e[--i] = 0;
        if (i == 0)
            break;
    }

    // reach[t]: elements expressible with monomials t..end.
    const std::size_t T = ord.monomials_.size();
    const std::size_t n = R.size();
    std::vector<std::vector<char>> reach(T + 1, std::vector<char>(n, 0));
    reach[T][R.zero().id] = 1;
    for (std::size_t t = T; t-- > 0;)
        for (std::size_t v = 0; v < n; ++v) {
            if (!reach[t + 1][v])
                continue;
            for (Elem a : ord.gamma_)
                reach[t][R.add(R.mul(a, ord.monomials_[t]), Elem{static_cast<std::uint32_t>(v)}).id] = 1;
        }

    ord.repr_.assign(n * T, 0);
    for (Elem x : R.elements()) {
        if (!reach[0][x.id])
            fail(ErrorKind::InternalError, R.name(x) + " has no canonical representation");
        Elem rest = x;
        for (std::size_t t = 0; t < T; ++t) {
            std::uint32_t pick = 0;
            for (; pick < ord.gamma_.size(); ++pick)
                if (reach[t + 1][R.sub(rest, R.mul(ord.gamma_[pick], ord.monomials_[t])).id])
                    break;
            ord.repr_[x.id * T + t] = pick;
            rest = R.sub(rest, R.mul(ord.gamma_[pick], ord.monomials_[t]));
        }
    }

    ord.sorted_ = R.elements();
    std::sort(ord.sorted_.begin(), ord.sorted_.end(), [&](Elem a, Elem b) {
        return std::lexicographical_compare(ord.repr_.begin() + a.id * T, ord.repr_.begin() + (a.id + 1) * T,
                                            ord.repr_.begin() + b.id * T, ord.repr_.begin() + (b.id + 1) * T);
    });
    ord.rank_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        ord.rank_[ord.sorted_[i].id] = static_cast<std::uint32_t>(i);
    return ord;
}

OrderParams canonical_params(const FiniteRing& ring) {
    const LocalData ld = local_data(ring);
    const FiniteRing& F = *ld.residue_field;
    OrderParams out;
    bool found = false;
    for (Elem r : ring.elements()) {
        const Elem rb = ld.projection[r.id];
        if (rb != F.zero() && unit_order(F, rb) == ld.q - 1) {
            out.alpha = r;
            found = true;
            break;
        }
    }
    if (!found)
        fail(ErrorKind::InternalError, "residue field has no primitive element");
    out.pis = minimal_generators_maximal_ideal(ring);
    return out;
}

// ---------------------------------------------------------------------------
// Galois rings

std::optional<GaloisParams> is_galois_ring(const FiniteRing& ring) {
    require_commutative(ring);
    if (!is_local(ring))
        return std::nullopt;
    const auto pp = prime_power(ring.characteristic());
    if (!pp)
        return std::nullopt;
    const auto [p, n] = *pp;
    std::vector<char> pR(ring.size(), 0);
    for (Elem r : ring.elements())
        pR[ring.times(static_cast<std::int64_t>(p), r).id] = 1;
    for (Elem r : ring.elements())
        if (static_cast<bool>(pR[r.id]) == ring.is_unit(r))
            return std::nullopt;
    // |R| = p^(n r)
    unsigned total = 0;
    for (std::size_t s = ring.size(); s > 1; s /= p)
        ++total;
    if (total % n != 0)
        return std::nullopt;
    return GaloisParams{p, n, total / n};
}

Elem GaloisRep::evaluate(std::span<const std::uint64_t> coeffs) const {
    std::size_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        idx = idx * modulus + coeffs[i] % modulus;
    return eval_table[idx];
}

GaloisRep galois_representation(const RingPtr& ring) {
    const FiniteRing& R = *ring;
    const auto gp = is_galois_ring(R);
    if (!gp)
        fail(ErrorKind::PreconditionViolation, R.spec() + " is not a Galois ring");
    const auto [p, n, r] = *gp;
    GaloisRep rep;
    rep.params = *gp;
    rep.modulus = R.characteristic();
    const LocalData ld = local_data(R);
    rep.alpha = canonical_params(R).alpha;

    auto eval_at = [&](const std::vector<std::uint64_t>& coeffs, Elem x) {
        Elem acc = R.zero();
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = R.add(R.mul(acc, x), R.from_int(static_cast<std::int64_t>(coeffs[i])));
        return acc;
    };

    // Least-degree monic g over F_p with g(alpha) in m.
    bool found = false;
    for (unsigned d = 1; d <= r && !found; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t t = 0; t < count; ++t) {
            std::vector<std::uint64_t> c(d + 1, 0);
            std::uint64_t v = t;
            for (unsigned i = 0; i < d; ++i) {
                c[i] = v % p;
                v /= p;
            }
            c[d] = 1;
            if (ld.in_ideal(eval_at(c, rep.alpha))) {
                rep.g = ModPoly(c);
                found = true;
                break;
            }
        }
    }
    if (!found || rep.g.degree() != static_cast<long>(r))
        fail(ErrorKind::InternalError, "minimal polynomial of the primitive residue has wrong degree");

    std::vector<std::uint64_t> fc(r + 1, 1);
    for (unsigned i = 0; i < r; ++i)
        fc[i] = (rep.modulus - p + rep.g.coeffs[i]) % rep.modulus;
    rep.f = ModPoly(fc);

    // The root of f lifting the residue of alpha is unique by Hensel's lemma.
    std::optional<Elem> beta;
    for (Elem x : R.elements())
        if (eval_at(fc, x) == R.zero() && ld.projection[x.id] == ld.projection[rep.alpha.id]) {
            beta = x;
            break;
        }
    if (!beta)
        fail(ErrorKind::InternalError, "Galois polynomial has no root lifting the primitive residue");
    rep.beta = *beta;

    rep.iota.assign(R.size(), {});
    rep.eval_table.assign(R.size(), R.zero());
    std::vector<char> hit(R.size(), 0);
    std::vector<std::uint64_t> h(r, 0);
    for (std::size_t idx = 0; idx < R.size(); ++idx) {
        std::size_t v = idx;
        for (unsigned i = 0; i < r; ++i) {
            h[i] = v % rep.modulus;
            v /= rep.modulus;
        }
        const Elem a = eval_at(h, rep.beta);
        if (hit[a.id])
            fail(ErrorKind::InternalError, "evaluation at the Galois root is not injective");
        hit[a.id] = 1;
        rep.iota[a.id] = h;
        rep.eval_table[idx] = a;
    }
    return rep;
}

} // namespace ringsolve
