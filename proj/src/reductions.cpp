#include "ringsolve/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ringsolve {

namespace {

std::uint64_t zmod_modulus(const FiniteRing& R) {
    const auto* z = std::get_if<rep::ZMod>(&R.rep());
    return z ? z->m : 0;
}

Elem residue(std::uint64_t v) { return Elem{static_cast<std::uint32_t>(v)}; }

void require_prime_power_zmod(const LinSystem& s, const char* what) {
    const std::uint64_t m = zmod_modulus(*s.ring);
    if (m == 0 || !prime_power(m))
        fail(ErrorKind::PreconditionViolation, std::string(what) + " requires a system over Z/p^k, got " + s.ring->spec());
}

} // namespace

// ---------------------------------------------------------------------------
// Ordered ring -> cyclic group Z/m

CyclicFrame make_cyclic_frame(const RingPtr& ring, std::span<const Elem> order) {
    if (!ring->commutative())
        fail(ErrorKind::PreconditionViolation, "ring_to_cyclic requires a commutative ring");
    CyclicFrame f;
    f.ring = ring;
    const std::uint64_t m = ring->characteristic();
    f.target = build_zmod(m);
    const GroupPtr G = additive_group(ring);
    f.dec = group_decompose_cyclic(*G, order);
    const std::size_t k = f.dec.rank();
    f.c.assign(k * k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Elem prod = ring->mul(f.dec.factors()[i].generator, f.dec.factors()[j].generator);
            const auto coords = f.dec.coords(prod);
            for (std::size_t y = 0; y < k; ++y)
                f.c[(i * k + j) * k + y] = coords[y];
        }
    for (const auto& fac : f.dec.factors())
        f.multiplier.push_back(m / fac.order);
    return f;
}

ReductionOutput ring_to_cyclic(const LinSystem& s, const CyclicFrame& frame) {
    const FiniteRing& R = *s.ring;
    if (!same_ring(R, *frame.ring))
        fail(ErrorKind::InvalidArgument, "cyclic frame belongs to a different ring");
    const std::uint64_t m = R.characteristic();
    const std::size_t k = frame.rank();
    const auto& fac = frame.dec.factors();

    // b^{r,y}_i: coordinate y of r*g_i, via the structure constants.
    std::map<std::uint32_t, std::vector<std::uint64_t>> bcoef;
    auto coefficients = [&](Elem r) -> const std::vector<std::uint64_t>& {
        auto it = bcoef.find(r.id);
        if (it != bcoef.end())
            return it->second;
        std::vector<std::uint64_t> out(k * k, 0); // [y*k + i]
        const auto rc = frame.dec.coords(r);
        for (std::size_t y = 0; y < k; ++y)
            for (std::size_t i = 0; i < k; ++i) {
                std::uint64_t acc = 0;
                for (std::size_t l = 0; l < k; ++l)
                    acc = (acc + rc[l] * frame.constant(l, i, y)) % fac[y].order;
                out[y * k + i] = acc;
            }
        return bcoef.emplace(r.id, std::move(out)).first->second;
    };

    LinSystem t(frame.target);
    for (const auto& c : s.cols)
        for (std::size_t i = 0; i < k; ++i)
            t.add_col(c + "#" + std::to_string(i + 1));
    for (std::size_t row = 0; row < s.num_rows(); ++row) {
        const auto bc = frame.dec.coords(s.b[row]);
        for (std::size_t y = 0; y < k; ++y) {
            const std::uint64_t mult = frame.multiplier[y];
            std::vector<Term> terms;
            for (const Term& term : s.A[row]) {
                const auto& B = coefficients(term.coeff);
                for (std::size_t i = 0; i < k; ++i) {
                    const std::uint64_t v = (mult * B[y * k + i]) % m;
                    if (v)
                        terms.push_back({static_cast<std::uint32_t>(term.col * k + i), residue(v)});
                }
            }
            t.add_row(s.rows[row] + "#" + std::to_string(y + 1), std::move(terms), residue((mult * bc[y]) % m));
        }
    }

    ReductionOutput out;
    out.trace.push_back("ring " + R.spec() + " -> Z/" + std::to_string(m));
    for (std::size_t i = 0; i < k; ++i)
        out.trace.push_back("generator g" + std::to_string(i + 1) + " = " + R.name(fac[i].generator) + " order " +
                            std::to_string(fac[i].order) + " multiplier " + std::to_string(frame.multiplier[i]));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::ostringstream os;
            os << "c[" << i + 1 << "][" << j + 1 << "] =";
            for (std::size_t y = 0; y < k; ++y)
                os << ' ' << frame.constant(i, j, y);
            out.trace.push_back(os.str());
        }
    for (const auto& [rid, B] : bcoef) {
        std::ostringstream os;
        os << "b[" << R.name(Elem{rid}) << "] =";
        for (std::size_t y = 0; y < k; ++y) {
            os << " (";
            for (std::size_t i = 0; i < k; ++i)
                os << (i ? "," : "") << B[y * k + i];
            os << ')';
        }
        out.trace.push_back(os.str());
    }
    out.target = std::move(t);

    const RingPtr ring = s.ring;
    const CyclicDecomposition dec = frame.dec;
    const std::size_t ncols = s.num_cols();
    out.backward = [ring, dec, k, ncols](std::span<const Elem> x) {
        std::vector<Elem> src(ncols, ring->zero());
        for (std::size_t j = 0; j < ncols; ++j)
            for (std::size_t i = 0; i < k; ++i)
                src[j] = ring->add(src[j], ring->times(static_cast<std::int64_t>(x[j * k + i].id), dec.factors()[i].generator));
        return src;
    };
    out.forward = [dec, k, ncols](std::span<const Elem> x) {
        std::vector<Elem> tgt(ncols * k);
        for (std::size_t j = 0; j < ncols; ++j) {
            const auto c = dec.coords(x[j]);
            for (std::size_t i = 0; i < k; ++i)
                tgt[j * k + i] = residue(c[i]);
        }
        return tgt;
    };
    return out;
}

ReductionOutput ring_to_cyclic(const LinSystem& s, const RingOrder& order) {
    return ring_to_cyclic(s, make_cyclic_frame(order.ring(), order.sorted()));
}

// ---------------------------------------------------------------------------
// Groups -> commutative rings

RingPtr build_phi_ring(const GroupPtr& group) {
    const AbelianGroup& G = *group;
    const std::uint64_t d = G.exponent();
    const std::size_t n = G.size() * d;
    if (n > element_cap())
        fail(ErrorKind::SizeError, "phi ring has " + std::to_string(n) + " elements, cap is " +
                                       std::to_string(element_cap()));
    FiniteRing::Parts parts;
    parts.rep = rep::Phi{group, d};
    parts.spec = "phi(" + G.spec() + ")";
    parts.names.resize(n);
    parts.add.resize(n * n);
    parts.mul.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        const Elem ga{static_cast<std::uint32_t>(a / d)};
        const std::uint64_t ma = a % d;
        parts.names[a] = "(" + G.name(ga) + ";" + std::to_string(ma) + ")";
        for (std::size_t b = 0; b < n; ++b) {
            const Elem gb{static_cast<std::uint32_t>(b / d)};
            const std::uint64_t mb = b % d;
            parts.add[a * n + b] = static_cast<FiniteRing::Cell>(G.add(ga, gb).id * d + (ma + mb) % d);
            const Elem g = G.add(G.times(static_cast<std::int64_t>(mb), ga), G.times(static_cast<std::int64_t>(ma), gb));
            parts.mul[a * n + b] = static_cast<FiniteRing::Cell>(g.id * d + (ma * mb) % d);
        }
    }
    return FiniteRing::assemble(std::move(parts));
}

ReductionOutput group_to_ring(const GroupSystem& s) {
    const RingPtr phi = build_phi_ring(s.group);
    const std::uint64_t d = s.group->exponent();
    LinSystem t(phi);
    for (const auto& c : s.cols)
        t.add_col(c);
    const Elem one_coeff{static_cast<std::uint32_t>(s.group->zero().id * d + 1 % d)};
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        std::vector<Term> terms;
        for (auto c : s.A[i])
            terms.push_back({c, one_coeff});
        t.add_row(s.rows[i], std::move(terms), Elem{static_cast<std::uint32_t>(s.b[i].id * d)});
    }
    ReductionOutput out;
    out.trace.push_back("group " + s.group->spec() + " -> " + phi->spec() + " with exponent " + std::to_string(d));
    out.target = std::move(t);
    out.backward = [d](std::span<const Elem> x) {
        std::vector<Elem> g;
        for (Elem e : x)
            g.push_back(Elem{static_cast<std::uint32_t>(e.id / d)});
        return g;
    };
    out.forward = [d](std::span<const Elem> x) {
        std::vector<Elem> r;
        for (Elem e : x)
            r.push_back(Elem{static_cast<std::uint32_t>(e.id * d)});
        return r;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Two-sided systems -> numerical systems

ReductionOutput twosided_to_numerical(const TwoSidedSystem& s) {
    const RingPtr ring = s.ring;
    const FiniteRing& R = *ring;

    // Split variables used with coefficients on both sides.
    std::vector<char> on_left(s.num_cols(), 0), on_right(s.num_cols(), 0);
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        for (const Term& t : s.left[i])
            on_left[t.col] = 1;
        for (const Term& t : s.right[i])
            on_right[t.col] = 1;
    }
    TwoSidedSystem split(ring);
    for (const auto& c : s.cols)
        split.add_col(c);
    std::vector<std::uint32_t> right_col(s.num_cols());
    for (std::uint32_t j = 0; j < s.num_cols(); ++j)
        right_col[j] = (on_left[j] && on_right[j]) ? split.add_col(s.cols[j] + "'") : j;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        std::vector<Term> right;
        for (const Term& t : s.right[i])
            right.push_back({right_col[t.col], t.coeff});
        split.add_row(s.rows[i], s.left[i], std::move(right), s.b[i]);
    }
    for (std::uint32_t j = 0; j < s.num_cols(); ++j)
        if (right_col[j] != j)
            split.add_row(s.cols[j] + "=" + s.cols[j] + "'", {{j, R.one()}}, {{right_col[j], R.neg(R.one())}},
                          R.zero());

    const GroupPtr G = additive_group(ring);
    const std::uint64_t d = G->exponent();
    NumericalSystem t;
    t.group = G;
    t.scalars = build_zmod(d);
    const std::size_t n = R.size();
    for (const auto& c : split.cols)
        for (Elem r : R.elements())
            t.add_col(c + "^" + R.name(r));
    for (std::size_t i = 0; i < split.num_rows(); ++i) {
        std::vector<Term> terms;
        for (const Term& term : split.left[i])
            for (Elem r : R.elements())
                terms.push_back({static_cast<std::uint32_t>(term.col * n + r.id), R.mul(term.coeff, r)});
        for (const Term& term : split.right[i])
            for (Elem r : R.elements())
                terms.push_back({static_cast<std::uint32_t>(term.col * n + r.id), R.mul(r, term.coeff)});
        t.add_row(split.rows[i], std::move(terms), split.b[i]);
    }

    ReductionOutput out;
    out.trace.push_back("two-sided system over " + R.spec() + " -> numerical system modulo " + std::to_string(d));
    for (std::uint32_t j = 0; j < s.num_cols(); ++j)
        if (right_col[j] != j)
            out.trace.push_back("split " + s.cols[j] + " into " + s.cols[j] + " and " + split.cols[right_col[j]]);
    out.target = std::move(t);
    const std::size_t ncols = s.num_cols();
    out.backward = [ring, n, ncols](std::span<const Elem> k) {
        std::vector<Elem> x(ncols, ring->zero());
        for (std::size_t j = 0; j < ncols; ++j)
            for (std::size_t r = 0; r < n; ++r)
                x[j] = ring->add(x[j], ring->times(static_cast<std::int64_t>(k[j * n + r].id),
                                                    Elem{static_cast<std::uint32_t>(r)}));
        return x;
    };
    out.forward = [n, ncols, right_col, total = split.num_cols()](std::span<const Elem> x) {
        std::vector<Elem> k(total * n, Elem{0});
        for (std::size_t j = 0; j < ncols; ++j) {
            k[j * n + x[j].id] = Elem{1};
            k[right_col[j] * n + x[j].id] = Elem{1};
        }
        return k;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Projection onto a local summand

LinSystem project_to_local(const LinSystem& s, const LocalSummand& summand) {
    LinSystem t(summand.ring);
    t.cols = s.cols;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        std::vector<Term> terms;
        for (const Term& term : s.A[i])
            terms.push_back({term.col, summand.project[term.coeff.id]});
        t.add_row(s.rows[i], std::move(terms), summand.project[s.b[i].id]);
    }
    return t;
}

LinSystem project_to_local(const LinSystem& s, Elem e) {
    for (const auto& summand : decompose_local(s.ring))
        if (summand.idempotent == e)
            return project_to_local(s, summand);
    fail(ErrorKind::InvalidParameter, s.ring->name(e) + " is not a primitive idempotent of " + s.ring->spec());
}

// ---------------------------------------------------------------------------
// Normal form

bool is_normal_form(const LinSystem& s) {
    const FiniteRing& R = *s.ring;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        if (s.b[i] != R.one())
            return false;
        for (const Term& t : s.A[i])
            if (t.coeff != R.one())
                return false;
    }
    return true;
}

ReductionOutput normal_form(const LinSystem& s) {
    // (i) over Z/m via the cyclic decomposition in table order.
    ReductionOutput stage1 = ring_to_cyclic(s, make_cyclic_frame(s.ring));
    const LinSystem& t1 = stage1.lin();
    const RingPtr Zm = t1.ring;
    const std::uint64_t m = zmod_modulus(*Zm);

    // (ii) constants w_r = r and slack v_e = 1 - b_e make every RHS 1.
    LinSystem t2(Zm);
    for (const auto& c : t1.cols)
        t2.add_col("x:" + c);
    std::vector<std::uint32_t> w(m);
    for (std::uint64_t r = 0; r < m; ++r)
        w[r] = t2.add_col("w:" + std::to_string(r));
    std::vector<std::uint32_t> v(t1.num_rows());
    for (std::size_t e = 0; e < t1.num_rows(); ++e)
        v[e] = t2.add_col("v:" + t1.rows[e]);
    for (std::uint64_t r = 0; r < m; ++r)
        t2.add_row("w:" + std::to_string(r), {{w[1], residue((m + 1 - r) % m)}, {w[r], residue(1)}}, residue(1));
    for (std::size_t e = 0; e < t1.num_rows(); ++e) {
        std::vector<Term> terms = t1.A[e];
        terms.push_back({v[e], residue(1)});
        t2.add_row("eq:" + t1.rows[e], std::move(terms), residue(1));
        t2.add_row("v:" + t1.rows[e], {{v[e], residue(1)}, {w[t1.b[e].id], residue(1)}}, residue(1));
    }

    // (iii) coefficient c on v becomes v@0 + ... + v@(c-1); copies are tied
    // to v@0 through the negation v@- with v@0 + v@- + w1@0 = 1.
    LinSystem t3(Zm);
    const std::size_t n2 = t2.num_cols();
    std::vector<std::uint32_t> copy0(n2), neg(n2, 0);
    for (std::uint32_t c = 0; c < n2; ++c) {
        copy0[c] = static_cast<std::uint32_t>(t3.num_cols());
        for (std::uint64_t i = 0; i < m; ++i)
            t3.add_col(t2.cols[c] + "@" + std::to_string(i));
        if (c != w[1])
            neg[c] = t3.add_col(t2.cols[c] + "@-");
    }
    const std::uint32_t w1 = copy0[w[1]];
    for (std::size_t i = 0; i < t2.num_rows(); ++i) {
        std::vector<Term> terms;
        for (const Term& term : t2.A[i])
            for (std::uint32_t k = 0; k < term.coeff.id; ++k)
                terms.push_back({copy0[term.col] + k, residue(1)});
        t3.add_row(t2.rows[i], std::move(terms), residue(1));
    }
    for (std::uint32_t c = 0; c < n2; ++c) {
        if (c == w[1]) {
            for (std::uint64_t i = 0; i < m; ++i)
                t3.add_row(t2.cols[c] + "@" + std::to_string(i), {{copy0[c] + static_cast<std::uint32_t>(i), residue(1)}},
                           residue(1));
            continue;
        }
        for (std::uint64_t i = 0; i < m; ++i)
            t3.add_row(t2.cols[c] + "@" + std::to_string(i),
                       {{copy0[c] + static_cast<std::uint32_t>(i), residue(1)}, {neg[c], residue(1)}, {w1, residue(1)}},
                       residue(1));
    }

    ReductionOutput out;
    out.trace = stage1.trace;
    out.trace.push_back("normal form over Z/" + std::to_string(m) + ": " + std::to_string(t3.num_rows()) + " rows, " +
                        std::to_string(t3.num_cols()) + " columns");
    const std::size_t n1 = t1.num_cols();
    const std::vector<Elem> b1 = t1.b;
    out.target = std::move(t3);
    auto back1 = stage1.backward;
    auto fwd1 = stage1.forward;
    out.backward = [back1, copy0, n1](std::span<const Elem> x) {
        std::vector<Elem> x1(n1);
        for (std::size_t j = 0; j < n1; ++j)
            x1[j] = x[copy0[j]];
        return back1(x1);
    };
    out.forward = [fwd1, copy0, neg, w, v, b1, m, n1, n2, total = out.lin().num_cols()](std::span<const Elem> x) {
        const auto x1 = fwd1(x);
        std::vector<std::uint64_t> val(n2, 0);
        for (std::size_t j = 0; j < n1; ++j)
            val[j] = x1[j].id;
        for (std::uint64_t r = 0; r < m; ++r)
            val[w[r]] = r;
        for (std::size_t e = 0; e < v.size(); ++e)
            val[v[e]] = (m + 1 - b1[e].id) % m;
        std::vector<Elem> x3(total, residue(0));
        for (std::size_t c = 0; c < n2; ++c) {
            for (std::uint64_t i = 0; i < m; ++i)
                x3[copy0[c] + i] = residue(val[c]);
            if (c != w[1])
                x3[neg[c]] = residue((m - val[c]) % m);
        }
        return x3;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Complement and Boolean combinators over Z/p^k

ReductionOutput complement_chain(const LinSystem& s) {
    require_prime_power_zmod(s, "complement");
    const std::uint64_t m = zmod_modulus(*s.ring);
    const auto [p, k] = *prime_power(m);
    std::uint64_t top = 1;
    for (unsigned i = 1; i < k; ++i)
        top *= p;
    LinSystem t(s.ring);
    for (const auto& r : s.rows)
        t.add_col("y:" + r);
    std::vector<std::vector<Term>> cols(s.num_cols());
    std::vector<Term> rhs_terms;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        for (const Term& term : s.A[i])
            cols[term.col].push_back({static_cast<std::uint32_t>(i), term.coeff});
        if (s.b[i] != s.ring->zero())
            rhs_terms.push_back({static_cast<std::uint32_t>(i), s.b[i]});
    }
    for (std::size_t j = 0; j < s.num_cols(); ++j)
        t.add_row("c:" + s.cols[j], std::move(cols[j]), s.ring->zero());
    t.add_row("rhs", std::move(rhs_terms), residue(top));
    ReductionOutput out;
    out.trace.push_back("complement over Z/" + std::to_string(m) + " with target " + std::to_string(top));
    out.target = std::move(t);
    return out;
}

LinSystem and_compose(const LinSystem& s1, const LinSystem& s2) {
    if (!same_ring(*s1.ring, *s2.ring))
        fail(ErrorKind::InvalidParameter, "and: systems over different rings " + s1.ring->spec() + " and " +
                                              s2.ring->spec());
    LinSystem t(s1.ring);
    for (const auto& c : s1.cols)
        t.add_col("1." + c);
    for (const auto& c : s2.cols)
        t.add_col("2." + c);
    const auto off = static_cast<std::uint32_t>(s1.num_cols());
    for (std::size_t i = 0; i < s1.num_rows(); ++i)
        t.add_row("1." + s1.rows[i], s1.A[i], s1.b[i]);
    for (std::size_t i = 0; i < s2.num_rows(); ++i) {
        std::vector<Term> terms = s2.A[i];
        for (Term& term : terms)
            term.col += off;
        t.add_row("2." + s2.rows[i], std::move(terms), s2.b[i]);
    }
    return t;
}

LinSystem or_compose(const LinSystem& s1, const LinSystem& s2) {
    if (!same_ring(*s1.ring, *s2.ring))
        fail(ErrorKind::InvalidParameter, "or: systems over different rings " + s1.ring->spec() + " and " +
                                              s2.ring->spec());
    require_prime_power_zmod(s1, "or");
    return complement_chain(and_compose(complement_chain(s1).lin(), complement_chain(s2).lin())).lin();
}

LinSystem or_compose_general(const std::vector<LinSystem>& components) {
    if (components.empty())
        fail(ErrorKind::InvalidParameter, "or-general needs at least one component");
    std::set<std::uint64_t> primes;
    std::uint64_t m = 1, P = 1;
    std::vector<std::uint64_t> q;
    for (const auto& s : components) {
        require_prime_power_zmod(s, "or-general");
        if (!is_normal_form(s))
            fail(ErrorKind::PreconditionViolation, "or-general components must be in normal form");
        const std::uint64_t qi = zmod_modulus(*s.ring);
        const auto [p, k] = *prime_power(qi);
        if (!primes.insert(p).second)
            fail(ErrorKind::InvalidParameter, "or-general components share the prime " + std::to_string(p));
        q.push_back(qi);
        m *= qi;
        P *= qi / p;
    }
    const RingPtr Zm = build_zmod(m);
    LinSystem t(Zm);
    std::vector<Term> zsum;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const LinSystem& s = components[i];
        const std::string tag = std::to_string(i + 1);
        const auto base = static_cast<std::uint32_t>(t.num_cols());
        for (const auto& c : s.cols)
            t.add_col(tag + "." + c);
        const std::uint32_t x = t.add_col("x" + tag);
        const std::uint32_t y = t.add_col("y" + tag);
        const std::uint32_t z = t.add_col("z" + tag);
        const Elem ci = residue(m / q[i]);
        for (std::size_t r = 0; r < s.num_rows(); ++r) {
            std::vector<Term> terms;
            for (const Term& term : s.A[r])
                terms.push_back({base + term.col, ci});
            terms.push_back({y, residue(1)});
            terms.push_back({z, residue(1)});
            t.add_row(tag + "." + s.rows[r], std::move(terms), residue(P));
        }
        t.add_row("x" + tag, {{x, residue(1)}}, residue(P));
        t.add_row("y" + tag, {{y, residue(P)}}, residue(P));
        zsum.push_back({z, residue(1)});
    }
    t.add_row("z", std::move(zsum), residue(P));
    return t;
}

// ---------------------------------------------------------------------------
// Nested solvability queries over Z/p

LinSystem collapse_nested(const NestedQuery& q) {
    const std::size_t rows = q.outer_rows.size(), cols = q.outer_cols.size();
    if (rows == 0 || cols == 0 || q.inner.size() != rows)
        fail(ErrorKind::InvalidArgument, "nested query needs a non-empty outer matrix of inner systems");
    RingPtr Zp;
    for (const auto& row : q.inner) {
        if (row.size() != cols)
            fail(ErrorKind::InvalidArgument, "nested query rows have inconsistent length");
        for (const auto& s : row) {
            const std::uint64_t p = zmod_modulus(*s.ring);
            if (p == 0 || !is_prime(p))
                fail(ErrorKind::PreconditionViolation, "nested queries require inner systems over Z/p");
            if (!Zp)
                Zp = s.ring;
            else if (!same_ring(*Zp, *s.ring))
                fail(ErrorKind::PreconditionViolation, "inner systems use different moduli");
            if (!is_normal_form(s))
                fail(ErrorKind::PreconditionViolation, "inner systems must be in normal form");
        }
    }
    const FiniteRing& R = *Zp;
    const Elem one = R.one(), minus_one = R.neg(R.one());

    LinSystem t(Zp);
    auto key = [&](std::size_t a, std::size_t b) { return q.outer_rows[a] + "," + q.outer_cols[b]; };
    std::vector<std::uint32_t> v(rows * cols);
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
            v[a * cols + b] = t.add_col("v:" + key(a, b));
    for (std::size_t a = 0; a < rows; ++a) {
        std::vector<Term> terms;
        for (std::size_t b = 0; b < cols; ++b)
            terms.push_back({v[a * cols + b], one});
        t.add_row("outer:" + q.outer_rows[a], std::move(terms), one);
    }

    // Appends s with every row sum = 1 rewritten as sum + extra = 0.
    auto embed = [&t, &R](const LinSystem& s, const std::string& prefix, std::vector<Term> extra) {
        const auto base = static_cast<std::uint32_t>(t.num_cols());
        for (const auto& c : s.cols)
            t.add_col(prefix + c);
        for (std::size_t i = 0; i < s.num_rows(); ++i) {
            std::vector<Term> terms;
            for (const Term& term : s.A[i])
                terms.push_back({base + term.col, term.coeff});
            terms.insert(terms.end(), extra.begin(), extra.end());
            t.add_row(prefix + s.rows[i], std::move(terms), R.zero());
        }
    };

    // v_ab != 0 forces inner(a,b) solvable.
    for (std::size_t a = 0; a < rows; ++a)
        for (std::size_t b = 0; b < cols; ++b)
            embed(q.inner[a][b], "in:" + key(a, b) + ":", {{v[a * cols + b], one}});

    // v_ab != v_cb forces exactly one of inner(a,b), inner(c,b) solvable.
    for (std::size_t b = 0; b < cols; ++b)
        for (std::size_t a = 0; a < rows; ++a)
            for (std::size_t c = a + 1; c < rows; ++c) {
                const LinSystem& s1 = q.inner[a][b];
                const LinSystem& s2 = q.inner[c][b];
                const LinSystem left = and_compose(s1, complement_chain(s2).lin());
                const LinSystem right = and_compose(complement_chain(s1).lin(), s2);
                const LinSystem x = normal_form(or_compose(left, right)).lin();
                embed(x, "xor:" + q.outer_rows[a] + "," + q.outer_rows[c] + "," + q.outer_cols[b] + ":",
                      {{v[a * cols + b], one}, {v[c * cols + b], minus_one}});
            }
    return t;
}

} // namespace ringsolve
