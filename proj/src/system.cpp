#include "ringsolve/system.hpp"

#include <algorithm>
#include <map>

namespace ringsolve {

namespace {

std::vector<Term> merge_terms(const FiniteRing& ring, std::vector<Term> terms) {
    std::map<std::uint32_t, Elem> acc;
    for (const Term& t : terms) {
        auto [it, inserted] = acc.emplace(t.col, t.coeff);
        if (!inserted)
            it->second = ring.add(it->second, t.coeff);
    }
    std::vector<Term> out;
    for (auto [col, c] : acc)
        if (c != ring.zero())
            out.push_back({col, c});
    return out;
}

void check_cols(const std::vector<Term>& terms, std::size_t ncols) {
    for (const Term& t : terms)
        if (t.col >= ncols)
            fail(ErrorKind::InvalidArgument, "term refers to unknown column " + std::to_string(t.col));
}

void check_assignment(std::size_t got, std::size_t want) {
    if (got != want)
        fail(ErrorKind::InvalidArgument,
             "assignment has " + std::to_string(got) + " values for " + std::to_string(want) + " variables");
}

} // namespace

std::uint32_t LinSystem::add_col(std::string id) {
    cols.push_back(std::move(id));
    return static_cast<std::uint32_t>(cols.size() - 1);
}

void LinSystem::add_row(std::string id, std::vector<Term> terms, Elem rhs) {
    check_cols(terms, cols.size());
    rows.push_back(std::move(id));
    A.push_back(merge_terms(*ring, std::move(terms)));
    b.push_back(rhs);
}

Elem LinSystem::coeff(std::size_t row, std::uint32_t col) const {
    const auto& r = A.at(row);
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const Term& t, std::uint32_t c) { return t.col < c; });
    return (it != r.end() && it->col == col) ? it->coeff : ring->zero();
}

std::uint32_t GroupSystem::add_col(std::string id) {
    cols.push_back(std::move(id));
    return static_cast<std::uint32_t>(cols.size() - 1);
}

void GroupSystem::add_row(std::string id, std::vector<std::uint32_t> cols_with_one, Elem rhs) {
    std::sort(cols_with_one.begin(), cols_with_one.end());
    if (std::adjacent_find(cols_with_one.begin(), cols_with_one.end()) != cols_with_one.end())
        fail(ErrorKind::InvalidArgument, "group system coefficients must be 0 or 1");
    for (auto c : cols_with_one)
        if (c >= cols.size())
            fail(ErrorKind::InvalidArgument, "term refers to unknown column " + std::to_string(c));
    rows.push_back(std::move(id));
    A.push_back(std::move(cols_with_one));
    b.push_back(rhs);
}

std::uint32_t TwoSidedSystem::add_col(std::string id) {
    cols.push_back(std::move(id));
    return static_cast<std::uint32_t>(cols.size() - 1);
}

void TwoSidedSystem::add_row(std::string id, std::vector<Term> left_terms, std::vector<Term> right_terms, Elem rhs) {
    check_cols(left_terms, cols.size());
    check_cols(right_terms, cols.size());
    rows.push_back(std::move(id));
    left.push_back(merge_terms(*ring, std::move(left_terms)));
    right.push_back(merge_terms(*ring, std::move(right_terms)));
    b.push_back(rhs);
}

std::uint32_t NumericalSystem::add_col(std::string id) {
    cols.push_back(std::move(id));
    return static_cast<std::uint32_t>(cols.size() - 1);
}

void NumericalSystem::add_row(std::string id, std::vector<Term> terms, Elem rhs) {
    check_cols(terms, cols.size());
    std::map<std::uint32_t, Elem> acc;
    for (const Term& t : terms) {
        auto [it, inserted] = acc.emplace(t.col, t.coeff);
        if (!inserted)
            it->second = group->add(it->second, t.coeff);
    }
    std::vector<Term> merged;
    for (auto [col, c] : acc)
        if (c != group->zero())
            merged.push_back({col, c});
    rows.push_back(std::move(id));
    A.push_back(std::move(merged));
    b.push_back(rhs);
}

bool eval_system(const LinSystem& s, std::span<const Elem> x) {
    check_assignment(x.size(), s.num_cols());
    const FiniteRing& R = *s.ring;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        Elem acc = R.zero();
        for (const Term& t : s.A[i])
            acc = R.add(acc, R.mul(t.coeff, x[t.col]));
        if (acc != s.b[i])
            return false;
    }
    return true;
}

bool eval_system(const GroupSystem& s, std::span<const Elem> x) {
    check_assignment(x.size(), s.num_cols());
    const AbelianGroup& G = *s.group;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        Elem acc = G.zero();
        for (auto c : s.A[i])
            acc = G.add(acc, x[c]);
        if (acc != s.b[i])
            return false;
    }
    return true;
}

bool eval_system(const TwoSidedSystem& s, std::span<const Elem> x) {
    check_assignment(x.size(), s.num_cols());
    const FiniteRing& R = *s.ring;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        Elem acc = R.zero();
        for (const Term& t : s.left[i])
            acc = R.add(acc, R.mul(t.coeff, x[t.col]));
        for (const Term& t : s.right[i])
            acc = R.add(acc, R.mul(x[t.col], t.coeff));
        if (acc != s.b[i])
            return false;
    }
    return true;
}

bool eval_system(const NumericalSystem& s, std::span<const Elem> x) {
    check_assignment(x.size(), s.num_cols());
    const AbelianGroup& G = *s.group;
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        Elem acc = G.zero();
        for (const Term& t : s.A[i])
            acc = G.add(acc, G.times(static_cast<std::int64_t>(x[t.col].id), t.coeff));
        if (acc != s.b[i])
            return false;
    }
    return true;
}

bool same_ring(const FiniteRing& a, const FiniteRing& b) {
    if (&a == &b)
        return true;
    if (a.size() != b.size() || a.spec() != b.spec())
        return false;
    const auto aa = a.add_table(), ba = b.add_table(), am = a.mul_table(), bm = b.mul_table();
    if (!std::equal(aa.begin(), aa.end(), ba.begin()) || !std::equal(am.begin(), am.end(), bm.begin()))
        return false;
    for (Elem e : a.elements())
        if (a.name(e) != b.name(e))
            return false;
    return true;
}

std::uint64_t digest(const LinSystem& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](std::string_view text) {
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0xff;
        h *= 0x100000001b3ull;
    };
    const FiniteRing& R = *s.ring;
    feed(R.spec());
    for (const auto& c : s.cols)
        feed(c);
    for (std::size_t i = 0; i < s.num_rows(); ++i) {
        feed(s.rows[i]);
        for (const Term& t : s.A[i]) {
            feed(std::to_string(t.col));
            feed(R.name(t.coeff));
        }
        feed(R.name(s.b[i]));
    }
    return h;
}

} // namespace ringsolve
