#include "ringsolve/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace ringsolve {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Table = std::vector<std::vector<std::uint32_t>>;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_relative() && !base.empty() && !fs::exists(path))
        return base / path;
    return path;
}

json load_json(const fs::path& path, std::size_t pos) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const Error& e) {
        throw ParseError(e.what(), pos);
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what(), pos);
    }
}

Table json_table(const json& j, const char* key, std::size_t pos) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("table file lacks \"") + key + "\"", pos);
    try {
        return j.at(key).get<Table>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed \"") + key + "\" table: " + e.what(), pos);
    }
}

// Recursive descent over one ring or group spec. Positions are offsets into
// the enclosing text (`offset` + index).
class SpecParser {
public:
    SpecParser(std::string_view text, const fs::path& base, std::size_t offset)
        : t_(text), base_(base), offset_(offset) {}

    RingPtr whole_ring() {
        RingPtr r = ring_product();
        finish();
        return r;
    }

    GroupPtr whole_group() {
        GroupPtr g = group_product();
        finish();
        return g;
    }

private:
    [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, offset_ + pos_); }

    void skip_ws() {
        while (pos_ < t_.size() && is_space(t_[pos_]))
            ++pos_;
    }

    void finish() {
        skip_ws();
        if (pos_ != t_.size())
            error("unexpected text '" + std::string(t_.substr(pos_)) + "'");
    }

    bool accept(std::string_view lit) {
        skip_ws();
        if (t_.substr(pos_, lit.size()) != lit)
            return false;
        pos_ += lit.size();
        return true;
    }

    void expect(std::string_view lit) {
        if (!accept(lit))
            error("expected '" + std::string(lit) + "'");
    }

    std::uint64_t number() {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
            const std::uint64_t d = static_cast<std::uint64_t>(t_[pos_] - '0');
            if (v > (UINT64_MAX - d) / 10)
                error("number too large");
            v = v * 10 + d;
            ++pos_;
        }
        if (pos_ == start)
            error("expected a number");
        return v;
    }

    // " x " between factors.
    bool product_sep() {
        const std::size_t save = pos_;
        if (pos_ < t_.size() && is_space(t_[pos_])) {
            skip_ws();
            if (pos_ + 1 < t_.size() && t_[pos_] == 'x' && is_space(t_[pos_ + 1])) {
                ++pos_;
                return true;
            }
        }
        pos_ = save;
        return false;
    }

    // Text up to the ')' closing an already opened '(' (not consumed).
    std::string_view balanced() {
        const std::size_t start = pos_;
        int depth = 0;
        while (pos_ < t_.size()) {
            const char c = t_[pos_];
            if (c == '(' || c == '[')
                ++depth;
            else if (c == ')' || c == ']') {
                if (depth == 0)
                    break;
                --depth;
            }
            ++pos_;
        }
        if (pos_ == t_.size())
            error("unbalanced parentheses");
        return t_.substr(start, pos_ - start);
    }

    std::string path_token() {
        const std::size_t start = pos_;
        while (pos_ < t_.size() && !is_space(t_[pos_]) && t_[pos_] != ')')
            ++pos_;
        if (pos_ == start)
            error("expected a path");
        return std::string(t_.substr(start, pos_ - start));
    }

    RingPtr ring_product() {
        std::vector<RingPtr> factors{ring_factor()};
        while (product_sep())
            factors.push_back(ring_factor());
        return factors.size() == 1 ? factors[0] : build_product(factors);
    }

    GroupPtr group_product() {
        std::vector<GroupPtr> factors{group_factor()};
        while (product_sep())
            factors.push_back(group_factor());
        return factors.size() == 1 ? factors[0] : build_group_product(factors);
    }

    ModPoly poly(std::uint64_t modulus) {
        const std::size_t start = pos_;
        balanced();
        const std::size_t end = pos_;
        pos_ = start;
        std::vector<std::uint64_t> c;
        bool negative = false;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ >= end) {
                if (first)
                    error("empty polynomial");
                break;
            }
            if (!first || t_[pos_] == '-') {
                if (t_[pos_] == '+')
                    negative = false;
                else if (t_[pos_] == '-')
                    negative = true;
                else
                    error("expected '+' or '-'");
                ++pos_;
                skip_ws();
            }
            first = false;
            std::uint64_t coeff = 1;
            unsigned degree = 0;
            bool any = false;
            if (pos_ < end && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
                coeff = number() % modulus;
                any = true;
                skip_ws();
                if (pos_ < end && t_[pos_] == '*') {
                    ++pos_;
                    skip_ws();
                    if (pos_ >= end || t_[pos_] != 'X')
                        error("expected 'X'");
                }
            }
            if (pos_ < end && t_[pos_] == 'X') {
                ++pos_;
                any = true;
                degree = 1;
                skip_ws();
                if (pos_ < end && t_[pos_] == '^') {
                    ++pos_;
                    const std::uint64_t d = number();
                    if (d > 64)
                        error("degree too large");
                    degree = static_cast<unsigned>(d);
                }
            }
            if (!any)
                error("expected a term");
            if (c.size() <= degree)
                c.resize(degree + 1, 0);
            const std::uint64_t v = negative ? (modulus - coeff) % modulus : coeff;
            c[degree] = (c[degree] + v) % modulus;
            skip_ws();
        }
        ModPoly f(std::move(c));
        f.normalize(0);
        return f;
    }

    RingPtr ring_factor() {
        skip_ws();
        const std::size_t start = pos_;
        if (accept("(")) {
            RingPtr r = ring_product();
            expect(")");
            return r;
        }
        if (accept("Z/")) {
            const std::uint64_t m = number();
            if (t_.substr(pos_, 5) == "[X]/(") {
                pos_ += 5;
                const auto pp = prime_power(m);
                if (!pp) {
                    pos_ = start;
                    error("polynomial quotient needs a prime-power modulus");
                }
                ModPoly f = poly(m);
                expect(")");
                return build_poly_quotient(pp->first, pp->second, f);
            }
            return build_zmod(m);
        }
        if (accept("GR(")) {
            const std::uint64_t q = number();
            expect(",");
            const std::uint64_t r = number();
            expect(")");
            if (r == 0 || r > 64)
                error("bad Galois degree");
            return build_galois_ring(q, static_cast<unsigned>(r));
        }
        if (accept("phi(")) {
            GroupPtr g = group_product();
            expect(")");
            return build_phi_ring(g);
        }
        if (accept("proj(")) {
            RingPtr parent = ring_product();
            expect(";");
            skip_ws();
            const std::size_t at = pos_;
            const std::string name(trim(balanced()));
            expect(")");
            const auto e = parent->find(name);
            if (!e) {
                pos_ = at;
                error("unknown element '" + name + "' of " + parent->spec());
            }
            return build_summand(parent, *e);
        }
        if (accept("table:")) {
            const std::size_t at = offset_ + pos_;
            const std::string path = path_token();
            const json j = load_json(resolve(base_, path), at);
            const Table add = json_table(j, "add", at), mul = json_table(j, "mul", at);
            bool commutative = true;
            if (j.contains("commutative") && j["commutative"].is_boolean()) {
                commutative = j["commutative"].get<bool>();
            } else {
                for (std::size_t a = 0; a < mul.size(); ++a)
                    for (std::size_t b = 0; b < mul[a].size() && b < mul.size(); ++b)
                        if (b < mul[b].size() && a < mul[b].size() && mul[a][b] != mul[b][a])
                            commutative = false;
            }
            return build_table_ring(add, mul, commutative, "table:" + path);
        }
        error("expected a ring");
    }

    GroupPtr group_factor() {
        skip_ws();
        const std::size_t start = pos_;
        if (accept("(")) {
            GroupPtr g = group_product();
            expect(")");
            return g;
        }
        if (accept("Z/")) {
            const std::uint64_t n = number();
            if (t_.substr(pos_, 1) != "[")
                return build_cyclic_group(n);
            pos_ = start;
        }
        if (accept("table:")) {
            const std::size_t at = offset_ + pos_;
            const std::string path = path_token();
            const json j = load_json(resolve(base_, path), at);
            return build_table_group(json_table(j, "add", at), "table:" + path);
        }
        return additive_group(ring_factor());
    }

    std::string_view t_;
    const fs::path& base_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Line lexer for equations

enum class Tok { Word, Quoted, Plus, Star, Equals };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
    bool label = false; // word or quoted id followed by ':'
};

struct Line {
    std::string_view text;
    std::size_t offset; // of text[0] in the file
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (const auto c = line.find('%'); c != std::string_view::npos)
            line = line.substr(0, c);
        std::size_t lead = 0;
        while (lead < line.size() && is_space(line[lead]))
            ++lead;
        line = trim(line);
        if (!line.empty())
            out.push_back({line, start + lead});
        if (end == text.size())
            break;
        start = end + 1;
    }
    return out;
}

std::vector<Token> lex(std::string_view s, std::size_t offset) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (c == '+' || c == '*' || c == '=') {
            out.push_back({c == '+' ? Tok::Plus : c == '*' ? Tok::Star : Tok::Equals, std::string(1, c), offset + i});
            ++i;
            continue;
        }
        if (c == '"') {
            const std::size_t start = i++;
            std::string text;
            while (i < s.size() && s[i] != '"') {
                if (s[i] == '\\' && i + 1 < s.size())
                    ++i;
                text += s[i++];
            }
            if (i == s.size())
                throw ParseError("unterminated quote", offset + start);
            ++i;
            Token t{Tok::Quoted, std::move(text), offset + start};
            if (i < s.size() && s[i] == ':') {
                t.label = true;
                ++i;
            }
            out.push_back(std::move(t));
            continue;
        }
        const std::size_t start = i;
        int depth = 0;
        while (i < s.size()) {
            const char d = s[i];
            if (d == '(' || d == '[')
                ++depth;
            else if ((d == ')' || d == ']') && depth > 0)
                --depth;
            else if (depth == 0 && (is_space(d) || d == '+' || d == '*' || d == '=' || d == '"'))
                break;
            ++i;
        }
        Token t{Tok::Word, std::string(s.substr(start, i - start)), offset + start};
        if (t.text.size() > 1 && t.text.back() == ':') {
            t.text.pop_back();
            t.label = true;
        }
        out.push_back(std::move(t));
    }
    return out;
}

// Whitespace-separated ids, quotes allowed.
std::vector<std::string> id_list(std::string_view s, std::size_t offset) {
    std::vector<std::string> out;
    for (const Token& t : lex(s, offset)) {
        if ((t.kind != Tok::Word && t.kind != Tok::Quoted) || t.label)
            throw ParseError("expected an id", t.pos);
        out.push_back(t.text);
    }
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

template <class Known>
std::string render_id(const std::string& id, Known&& is_element) {
    bool plain = !id.empty() && id.back() != ':' && !is_element(id);
    for (char c : id)
        if (is_space(c) || c == '"' || c == '+' || c == '*' || c == '=' || c == '%' || c == '(' || c == ')' ||
            c == '[' || c == ']' || c == '\\')
            plain = false;
    return plain ? id : quote(id);
}

std::pair<std::string_view, std::string_view> keyword(const Line& line) {
    const std::size_t sp = line.text.find_first_of(" \t");
    if (sp == std::string_view::npos)
        return {line.text, {}};
    return {line.text.substr(0, sp), trim(line.text.substr(sp))};
}

std::size_t rest_offset(const Line& line, std::string_view rest) {
    return line.offset + static_cast<std::size_t>(rest.data() - line.text.data());
}

} // namespace

// ---------------------------------------------------------------------------

RingPtr parse_ring_spec(std::string_view text, const fs::path& base) {
    return SpecParser(text, base, 0).whole_ring();
}

GroupPtr parse_group_spec(std::string_view text, const fs::path& base) {
    return SpecParser(text, base, 0).whole_group();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::InvalidArgument, "cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

AnySystem parse_system(std::string_view text, const fs::path& base) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError("empty system file", 0);
    const auto [head, spec] = keyword(lines[0]);
    const std::size_t spec_at = rest_offset(lines[0], spec);

    AnySystem sys;
    RingPtr ring;
    GroupPtr group;
    if (head == "ring" || head == "twosided") {
        ring = SpecParser(spec, base, spec_at).whole_ring();
        if (head == "twosided" || !ring->commutative())
            sys = TwoSidedSystem(ring);
        else
            sys = LinSystem(ring);
    } else if (head == "group") {
        group = SpecParser(spec, base, spec_at).whole_group();
        sys = GroupSystem(group);
    } else if (head == "numerical") {
        group = SpecParser(spec, base, spec_at).whole_group();
        NumericalSystem n;
        n.group = group;
        n.scalars = build_zmod(std::max<std::uint64_t>(group->exponent(), 2));
        sys = std::move(n);
    } else {
        throw ParseError("expected a ring, twosided, group or numerical header", lines[0].offset);
    }
    if (group && std::holds_alternative<NumericalSystem>(sys) && group->exponent() < 2)
        throw ParseError("numerical systems need a nontrivial group", spec_at);

    auto ring_find = [&](std::string_view n) { return ring->find(n); };
    auto group_find = [&](std::string_view n) { return group->find(n); };
    const bool over_ring = static_cast<bool>(ring);

    std::map<std::string, std::uint32_t> vars;
    auto add_col = [&](const std::string& id) {
        return std::visit([&](auto& s) { return s.add_col(id); }, sys);
    };
    std::size_t row_count = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const auto [kw, rest] = keyword(line);
        const std::size_t at = rest_offset(line, rest);
        if (kw == "vars") {
            if (row_count)
                throw ParseError("vars after equations", line.offset);
            for (const auto& id : id_list(rest, at)) {
                if (vars.count(id))
                    throw ParseError("duplicate variable '" + id + "'", at);
                vars[id] = add_col(id);
            }
            continue;
        }
        if (kw != "eq")
            throw ParseError("unknown directive '" + std::string(kw) + "'", line.offset);

        auto toks = lex(rest, at);
        std::size_t k = 0;
        std::string row_id = std::to_string(row_count + 1);
        if (!toks.empty() && toks[0].label) {
            row_id = toks[0].text;
            k = 1;
        }
        auto var_of = [&](const Token& t) -> std::optional<std::uint32_t> {
            if (t.kind == Tok::Quoted) {
                const auto it = vars.find(t.text);
                if (it == vars.end())
                    throw ParseError("undeclared variable '" + t.text + "'", t.pos);
                return it->second;
            }
            const bool element = over_ring ? ring->find(t.text).has_value() : group->find(t.text).has_value();
            if (element)
                return std::nullopt;
            const auto it = vars.find(t.text);
            if (it == vars.end())
                throw ParseError("'" + t.text + "' is neither a variable nor an element", t.pos);
            return it->second;
        };
        auto elem_of = [&](const Token& t, bool in_group) -> Elem {
            if (t.kind != Tok::Word)
                throw ParseError("expected an element", t.pos);
            const auto e = in_group ? group_find(t.text) : ring_find(t.text);
            if (!e)
                throw ParseError("unknown element '" + t.text + "'", t.pos);
            return *e;
        };
        auto need = [&](std::size_t i) -> const Token& {
            if (i >= toks.size())
                throw ParseError("incomplete equation", line.offset + line.text.size());
            return toks[i];
        };

        std::vector<Term> left, right;
        std::vector<std::uint32_t> ones;
        bool empty_lhs = false;
        bool first = true;
        while (true) {
            if (!first) {
                const Token& op = need(k);
                if (op.kind == Tok::Equals)
                    break;
                if (op.kind != Tok::Plus)
                    throw ParseError("expected '+' or '='", op.pos);
                ++k;
            }
            first = false;
            const Token& a = need(k++);
            if (a.kind != Tok::Word && a.kind != Tok::Quoted)
                throw ParseError("expected a term", a.pos);
            const bool product = k < toks.size() && toks[k].kind == Tok::Star;
            if (!product) {
                const auto v = var_of(a);
                if (!v) {
                    const Elem e = elem_of(a, !over_ring);
                    const Elem zero = over_ring ? ring->zero() : group->zero();
                    if (e != zero || left.size() + right.size() + ones.size() != 0 || empty_lhs)
                        throw ParseError("constant term on the left side", a.pos);
                    empty_lhs = true;
                    continue;
                }
                if (std::holds_alternative<GroupSystem>(sys))
                    ones.push_back(*v);
                else if (over_ring)
                    left.push_back({*v, ring->one()});
                else
                    throw ParseError("numerical terms need a group coefficient", a.pos);
                continue;
            }
            ++k;
            const Token& b = need(k++);
            if (std::holds_alternative<GroupSystem>(sys))
                throw ParseError("group equations take bare variables", a.pos);
            const auto va = var_of(a);
            const auto vb = var_of(b);
            if (va.has_value() == vb.has_value())
                throw ParseError("a term is one coefficient times one variable", a.pos);
            const bool in_group = !over_ring;
            if (vb) {
                left.push_back({*vb, elem_of(a, in_group)});
            } else if (std::holds_alternative<TwoSidedSystem>(sys)) {
                right.push_back({*va, elem_of(b, in_group)});
            } else {
                left.push_back({*va, elem_of(b, in_group)});
            }
        }
        ++k;
        const Token& rhs_tok = need(k++);
        if (k != toks.size())
            throw ParseError("trailing text after the right side", toks[k].pos);
        const bool rhs_in_group = !over_ring;
        const Elem rhs = elem_of(rhs_tok, rhs_in_group);

        try {
            std::visit(
                [&](auto& s) {
                    using S = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, NumericalSystem>)
                        s.add_row(row_id, left, rhs);
                    else if constexpr (std::is_same_v<S, GroupSystem>)
                        s.add_row(row_id, ones, rhs);
                    else
                        s.add_row(row_id, left, right, rhs);
                },
                sys);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError)
                throw;
            throw ParseError(e.what(), line.offset);
        }
        ++row_count;
    }
    return sys;
}

const std::vector<std::string>& system_cols(const AnySystem& s) {
    return std::visit([](const auto& x) -> const std::vector<std::string>& { return x.cols; }, s);
}

std::string system_domain(const AnySystem& s) {
    return std::visit(
        [](const auto& x) -> std::string {
            using S = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<S, LinSystem>)
                return "ring " + x.ring->spec();
            else if constexpr (std::is_same_v<S, TwoSidedSystem>)
                return (x.ring->commutative() ? "twosided " : "ring ") + x.ring->spec();
            else if constexpr (std::is_same_v<S, GroupSystem>)
                return "group " + x.group->spec();
            else
                return "numerical " + x.group->spec();
        },
        s);
}

std::string write_system(const AnySystem& sys) {
    std::ostringstream os;
    os << system_domain(sys) << '\n';
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            auto is_elem = [&](const std::string& n) {
                if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, TwoSidedSystem>)
                    return s.ring->find(n).has_value();
                else
                    return s.group->find(n).has_value();
            };
            auto name = [&](Elem e) -> std::string {
                if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, TwoSidedSystem>)
                    return s.ring->name(e);
                else
                    return s.group->name(e);
            };
            auto col = [&](std::uint32_t j) { return render_id(s.cols[j], is_elem); };
            os << "vars";
            for (std::uint32_t j = 0; j < s.num_cols(); ++j)
                os << ' ' << col(j);
            os << '\n';
            for (std::size_t i = 0; i < s.num_rows(); ++i) {
                os << "eq " << render_id(s.rows[i], is_elem) << ": ";
                std::vector<std::string> terms;
                if constexpr (std::is_same_v<S, GroupSystem>) {
                    for (std::uint32_t j : s.A[i])
                        terms.push_back(col(j));
                } else if constexpr (std::is_same_v<S, TwoSidedSystem>) {
                    for (const Term& t : s.left[i])
                        terms.push_back(name(t.coeff) + "*" + col(t.col));
                    for (const Term& t : s.right[i])
                        terms.push_back(col(t.col) + "*" + name(t.coeff));
                } else {
                    for (const Term& t : s.A[i])
                        terms.push_back(name(t.coeff) + "*" + col(t.col));
                }
                if (terms.empty()) {
                    if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, TwoSidedSystem>)
                        terms.push_back(name(s.ring->zero()));
                    else
                        terms.push_back(name(s.group->zero()));
                }
                for (std::size_t t = 0; t < terms.size(); ++t)
                    os << (t ? " + " : "") << terms[t];
                os << " = " << name(s.b[i]) << '\n';
            }
        },
        sys);
    return os.str();
}

// ---------------------------------------------------------------------------

Matrix parse_matrix(std::string_view text, const fs::path& base) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError("empty matrix file", 0);
    const auto [head, spec] = keyword(lines[0]);
    if (head != "ring")
        throw ParseError("expected a ring header", lines[0].offset);
    RingPtr ring = SpecParser(spec, base, rest_offset(lines[0], spec)).whole_ring();
    std::vector<std::string> rows, cols;
    std::size_t i = 1;
    for (; i < lines.size() && i < 3; ++i) {
        const auto [kw, rest] = keyword(lines[i]);
        if (kw == "rows")
            rows = id_list(rest, rest_offset(lines[i], rest));
        else if (kw == "cols")
            cols = id_list(rest, rest_offset(lines[i], rest));
        else
            break;
    }
    if (rows.empty() || cols.empty())
        throw ParseError("matrix needs rows and cols headers", lines[std::min(i, lines.size() - 1)].offset);
    Matrix m(ring, rows, cols);
    std::map<std::string, std::size_t> row_index;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!row_index.emplace(rows[r], r).second)
            throw ParseError("duplicate row id '" + rows[r] + "'", lines[1].offset);
    std::vector<bool> seen(rows.size(), false);
    for (; i < lines.size(); ++i) {
        const auto [kw, rest] = keyword(lines[i]);
        if (kw != "row")
            throw ParseError("expected 'row'", lines[i].offset);
        const auto toks = lex(rest, rest_offset(lines[i], rest));
        if (toks.empty() || !toks[0].label)
            throw ParseError("expected '<row id>:'", rest_offset(lines[i], rest));
        const auto it = row_index.find(toks[0].text);
        if (it == row_index.end())
            throw ParseError("unknown row id '" + toks[0].text + "'", toks[0].pos);
        if (seen[it->second])
            throw ParseError("row '" + toks[0].text + "' given twice", toks[0].pos);
        seen[it->second] = true;
        if (toks.size() != cols.size() + 1)
            throw ParseError("row '" + toks[0].text + "' needs " + std::to_string(cols.size()) + " entries",
                             toks[0].pos);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto e = toks[j + 1].kind == Tok::Word ? ring->find(toks[j + 1].text) : std::nullopt;
            if (!e)
                throw ParseError("unknown element '" + toks[j + 1].text + "'", toks[j + 1].pos);
            m.at(it->second, j) = *e;
        }
    }
    return m;
}

std::string write_matrix(const Matrix& m) {
    auto never = [](const std::string&) { return false; };
    std::ostringstream os;
    os << "ring " << m.ring->spec() << "\nrows";
    for (const auto& r : m.rows)
        os << ' ' << render_id(r, never);
    os << "\ncols";
    for (const auto& c : m.cols)
        os << ' ' << render_id(c, never);
    os << '\n';
    for (std::size_t i = 0; i < m.num_rows(); ++i) {
        os << "row " << render_id(m.rows[i], never) << ':';
        for (std::size_t j = 0; j < m.num_cols(); ++j)
            os << ' ' << m.ring->name(m.at(i, j));
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

std::function<std::string(Elem)> value_names(const AnySystem& sys) {
    return std::visit(
        [](const auto& s) -> std::function<std::string(Elem)> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, TwoSidedSystem>)
                return [r = s.ring](Elem e) { return r->name(e); };
            else if constexpr (std::is_same_v<S, GroupSystem>)
                return [g = s.group](Elem e) { return g->name(e); };
            else
                return [r = s.scalars](Elem e) { return r->name(e); };
        },
        sys);
}

std::function<std::optional<Elem>(std::string_view)> value_lookup(const AnySystem& sys) {
    return std::visit(
        [](const auto& s) -> std::function<std::optional<Elem>(std::string_view)> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LinSystem> || std::is_same_v<S, TwoSidedSystem>)
                return [r = s.ring](std::string_view n) { return r->find(n); };
            else if constexpr (std::is_same_v<S, GroupSystem>)
                return [g = s.group](std::string_view n) { return g->find(n); };
            else
                return [r = s.scalars](std::string_view n) { return r->find(n); };
        },
        sys);
}

std::vector<ChainComponent> components_of(const AnySystem& sys) {
    return std::visit(
        [](const auto& s) -> std::vector<ChainComponent> {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LinSystem>)
                return CommutativeSolver(s.ring).reduce(s);
            else
                return chain_components(s);
        },
        sys);
}

} // namespace

std::string write_certificate(const AnySystem& sys, const Certificate& cert, Format format) {
    const auto name = value_names(sys);
    const auto& cols = system_cols(sys);
    if (format == Format::Json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        if (cert.verdict == Verdict::Solvable) {
            j["verdict"] = "solvable";
            nlohmann::ordered_json values = nlohmann::ordered_json::array();
            for (std::size_t c = 0; c < cert.assignment.size() && c < cols.size(); ++c)
                values.push_back({{"var", cols[c]}, {"value", name(cert.assignment[c])}});
            j["values"] = std::move(values);
        } else {
            const Witness& w = *cert.witness;
            j["verdict"] = "unsolvable";
            j["component"] = w.component;
            j["label"] = w.label;
            j["ring"] = w.chain_ring->spec();
            j["digest"] = std::to_string(w.digest);
            nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
            for (Elem e : w.coeffs)
                coeffs.push_back(w.chain_ring->name(e));
            j["witness"] = std::move(coeffs);
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    auto never = [](const std::string&) { return false; };
    if (cert.verdict == Verdict::Solvable) {
        os << "verdict solvable\n";
        for (std::size_t c = 0; c < cert.assignment.size() && c < cols.size(); ++c)
            os << "value " << render_id(cols[c], never) << " = " << name(cert.assignment[c]) << '\n';
        return os.str();
    }
    const Witness& w = *cert.witness;
    os << "verdict unsolvable\ncomponent " << w.component << "\nlabel " << w.label << "\nring "
       << w.chain_ring->spec() << "\ndigest " << w.digest << "\nwitness";
    for (Elem e : w.coeffs)
        os << ' ' << w.chain_ring->name(e);
    os << '\n';
    return os.str();
}

Certificate parse_certificate(std::string_view text, const AnySystem& sys) {
    struct Raw {
        std::string verdict;
        std::vector<std::pair<std::string, std::string>> values;
        std::optional<std::uint64_t> component, digest;
        std::string label;
        std::vector<std::string> witness;
        bool has_witness = false;
    } raw;

    if (!trim(text).empty() && trim(text).front() == '{') {
        json j;
        try {
            j = json::parse(text);
            raw.verdict = j.at("verdict").get<std::string>();
            if (j.contains("values"))
                for (const auto& v : j["values"])
                    raw.values.emplace_back(v.at("var").get<std::string>(), v.at("value").get<std::string>());
            if (j.contains("component"))
                raw.component = j["component"].get<std::uint64_t>();
            if (j.contains("label"))
                raw.label = j["label"].get<std::string>();
            if (j.contains("digest"))
                raw.digest = std::stoull(j["digest"].get<std::string>());
            if (j.contains("witness")) {
                raw.has_witness = true;
                raw.witness = j["witness"].get<std::vector<std::string>>();
            }
        } catch (const json::exception& e) {
            throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
        } catch (const std::logic_error& e) {
            throw ParseError(std::string("malformed certificate: ") + e.what(), 0);
        }
    } else {
        for (const Line& line : split_lines(text)) {
            const auto [kw, rest] = keyword(line);
            const std::size_t at = rest_offset(line, rest);
            auto integer = [&](std::string_view s) {
                try {
                    std::size_t used = 0;
                    const auto v = std::stoull(std::string(s), &used);
                    if (used != s.size())
                        throw std::invalid_argument("trailing");
                    return static_cast<std::uint64_t>(v);
                } catch (const std::logic_error&) {
                    throw ParseError("expected an integer", at);
                }
            };
            if (kw == "verdict") {
                raw.verdict = rest;
            } else if (kw == "value") {
                const auto toks = lex(rest, at);
                if (toks.size() != 3 || toks[1].kind != Tok::Equals || toks[2].kind != Tok::Word)
                    throw ParseError("expected 'value <var> = <element>'", at);
                raw.values.emplace_back(toks[0].text, toks[2].text);
            } else if (kw == "component") {
                raw.component = integer(rest);
            } else if (kw == "label") {
                raw.label = rest;
            } else if (kw == "ring") {
                // informational
            } else if (kw == "digest") {
                raw.digest = integer(rest);
            } else if (kw == "witness") {
                raw.has_witness = true;
                for (const Token& t : lex(rest, at))
                    raw.witness.push_back(t.text);
            } else {
                throw ParseError("unknown certificate field '" + std::string(kw) + "'", line.offset);
            }
        }
    }

    Certificate cert;
    if (raw.verdict == "solvable") {
        const auto& cols = system_cols(sys);
        if (raw.values.size() != cols.size())
            fail(ErrorKind::InvalidCertificate, "certificate assigns " + std::to_string(raw.values.size()) +
                                                    " of " + std::to_string(cols.size()) + " variables");
        const auto find = value_lookup(sys);
        std::map<std::string, Elem> given;
        for (const auto& [var, value] : raw.values) {
            const auto e = find(value);
            if (!e)
                fail(ErrorKind::InvalidCertificate, "unknown value '" + value + "' for " + var);
            if (!given.emplace(var, *e).second)
                fail(ErrorKind::InvalidCertificate, "variable " + var + " assigned twice");
        }
        for (const auto& c : cols) {
            const auto it = given.find(c);
            if (it == given.end())
                fail(ErrorKind::InvalidCertificate, "no value for variable " + c);
            cert.assignment.push_back(it->second);
        }
        return cert;
    }
    if (raw.verdict != "unsolvable")
        throw ParseError("verdict must be solvable or unsolvable", 0);
    cert.verdict = Verdict::Unsolvable;
    if (!raw.has_witness || !raw.component || !raw.digest)
        fail(ErrorKind::InvalidCertificate, "unsolvable certificate needs component, digest and witness");
    const auto comps = components_of(sys);
    if (*raw.component >= comps.size())
        fail(ErrorKind::InvalidCertificate, "witness names component " + std::to_string(*raw.component) + " of " +
                                                std::to_string(comps.size()));
    Witness w;
    w.component = *raw.component;
    w.label = raw.label;
    w.digest = *raw.digest;
    w.chain_ring = comps[w.component].system.ring;
    for (const auto& n : raw.witness) {
        const auto e = w.chain_ring->find(n);
        if (!e)
            fail(ErrorKind::InvalidCertificate, "unknown witness entry '" + n + "'");
        w.coeffs.push_back(*e);
    }
    cert.witness = std::move(w);
    return cert;
}

// ---------------------------------------------------------------------------

NestedQuery parse_nested(std::string_view text, const fs::path& base) {
    NestedQuery q;
    struct Cell {
        std::string row, col, path;
        std::size_t pos;
    };
    std::vector<Cell> cells;
    for (const Line& line : split_lines(text)) {
        const auto [kw, rest] = keyword(line);
        const std::size_t at = rest_offset(line, rest);
        auto ids = id_list(rest, at);
        if (kw == "outer" && !ids.empty() && ids[0] == "rows") {
            q.outer_rows.assign(ids.begin() + 1, ids.end());
        } else if (kw == "outer" && !ids.empty() && ids[0] == "cols") {
            q.outer_cols.assign(ids.begin() + 1, ids.end());
        } else if (kw == "inner" && ids.size() == 3) {
            cells.push_back({ids[0], ids[1], ids[2], at});
        } else {
            throw ParseError("expected 'outer rows', 'outer cols' or 'inner <row> <col> <path>'", line.offset);
        }
    }
    if (q.outer_rows.empty() || q.outer_cols.empty())
        throw ParseError("nested query needs outer rows and cols", 0);
    q.inner.assign(q.outer_rows.size(), std::vector<LinSystem>(q.outer_cols.size()));
    std::vector<std::vector<bool>> filled(q.outer_rows.size(), std::vector<bool>(q.outer_cols.size(), false));
    auto index = [](const std::vector<std::string>& ids, const std::string& id) {
        return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (const Cell& c : cells) {
        const std::size_t a = index(q.outer_rows, c.row), b = index(q.outer_cols, c.col);
        if (a == q.outer_rows.size() || b == q.outer_cols.size())
            throw ParseError("unknown outer id in inner entry", c.pos);
        if (filled[a][b])
            throw ParseError("inner entry given twice", c.pos);
        const fs::path p = resolve(base, c.path);
        AnySystem s = parse_system(read_file(p), p.parent_path());
        if (!std::holds_alternative<LinSystem>(s))
            throw ParseError("inner systems must be commutative ring systems", c.pos);
        q.inner[a][b] = std::move(std::get<LinSystem>(s));
        filled[a][b] = true;
    }
    for (std::size_t a = 0; a < filled.size(); ++a)
        for (std::size_t b = 0; b < filled[a].size(); ++b)
            if (!filled[a][b])
                throw ParseError("missing inner entry " + q.outer_rows[a] + " " + q.outer_cols[b], 0);
    return q;
}

} // namespace ringsolve
