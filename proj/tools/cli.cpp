#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "CLI11.hpp"

#include "ringsolve/io.hpp"
#include "ringsolve/oracle.hpp"

namespace ringsolve::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kReductions = {"ring-to-cyclic", "group-to-ring", "twosided-numerical",
                                              "project-local",  "normal-form",   "complement",
                                              "and",            "or",            "or-general",
                                              "collapse"};

int exit_code(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::InternalError: return kViolation;
    case ErrorKind::InvalidCertificate: return kNegative;
    default: return kUsage;
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text))
        fail(ErrorKind::InvalidArgument, "cannot write " + path);
}

fs::path dir_of(const std::string& path) { return fs::path(path).parent_path(); }

AnySystem load_system(const std::string& path) { return parse_system(read_file(path), dir_of(path)); }

Matrix load_matrix(const std::string& path) { return parse_matrix(read_file(path), dir_of(path)); }

template <class S>
const S& expect_kind(const AnySystem& s, const std::string& path, const char* what) {
    if (const S* p = std::get_if<S>(&s))
        return *p;
    fail(ErrorKind::PreconditionViolation, path + " is not " + what);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Each name preceded by a space.
std::string names(const FiniteRing& R, const std::vector<Elem>& es) {
    std::string out;
    for (Elem e : es)
        out += " " + R.name(e);
    return out;
}

// ---------------------------------------------------------------------------
// ring

void describe_local(const RingPtr& R, std::ostream& out, const std::string& indent) {
    const LocalData ld = local_data(*R);
    out << indent << "residue-field " << ld.q << '\n';
    out << indent << "maximal-ideal " << ld.maximal_ideal.size() << '\n';
    out << indent << "generators" << names(*R, minimal_generators_maximal_ideal(*R)) << '\n';
    if (const auto c = chain_data(*R))
        out << indent << "chain yes pi " << R->name(c->pi) << " nilpotency " << c->n << '\n';
    else
        out << indent << "chain no\n";
    if (const auto g = is_galois_ring(*R))
        out << indent << "galois GR(" << g->p << '^' << g->n << ',' << g->r << ")\n";
    else
        out << indent << "galois no\n";
}

int ring_info(const std::string& spec, std::ostream& out) {
    const RingPtr R = parse_ring_spec(spec);
    out << "spec " << R->spec() << '\n';
    out << "size " << R->size() << '\n';
    out << "characteristic " << R->characteristic() << '\n';
    out << "commutative " << yes_no(R->commutative()) << '\n';
    out << "units " << units(*R).size() << '\n';
    out << "idempotents" << names(*R, idempotents(*R)) << '\n';
    if (!R->commutative())
        return kSuccess;
    const bool local = is_local(*R);
    out << "local " << yes_no(local) << '\n';
    if (local)
        describe_local(R, out, "");
    return kSuccess;
}

int ring_decompose(const std::string& spec, std::ostream& out) {
    const RingPtr R = parse_ring_spec(spec);
    if (!R->commutative())
        fail(ErrorKind::PreconditionViolation, R->spec() + " is not commutative");
    out << "spec " << R->spec() << '\n';
    out << "base" << names(*R, base(*R)) << '\n';
    for (const LocalSummand& s : decompose_local(R)) {
        out << "summand e=" << R->name(s.idempotent) << " size " << s.ring->size() << " spec " << s.ring->spec()
            << '\n';
        describe_local(s.ring, out, "  ");
    }
    return kSuccess;
}

void print_order(const RingOrder& order, std::ostream& out, const std::string& indent) {
    const FiniteRing& R = *order.ring();
    out << indent << "alpha " << R.name(order.alpha()) << '\n';
    out << indent << "generators" << names(R, order.generators()) << '\n';
    out << indent << "gamma" << names(R, order.gamma()) << '\n';
    out << indent << "monomials";
    for (const auto& ex : order.exponents()) {
        out << " (";
        for (std::size_t i = 0; i < ex.size(); ++i)
            out << (i ? "," : "") << ex[i];
        out << ')';
    }
    out << '\n';
    for (Elem e : order.sorted()) {
        out << indent << order.rank(e) << ' ' << R.name(e) << " :";
        for (auto c : order.representation(e))
            out << ' ' << R.name(order.gamma()[c]);
        out << '\n';
    }
}

int ring_order(const std::string& spec, const std::string& alpha, const std::vector<std::string>& pis,
               std::ostream& out) {
    const RingPtr R = parse_ring_spec(spec);
    auto elem = [&](const RingPtr& ring, const std::string& n) {
        const auto e = ring->find(n);
        if (!e)
            fail(ErrorKind::InvalidParameter, "unknown element '" + n + "' of " + ring->spec());
        return *e;
    };
    if (!alpha.empty() || !pis.empty()) {
        if (!is_local(*R))
            fail(ErrorKind::PreconditionViolation, "explicit parameters need a local ring");
        const OrderParams def = canonical_params(*R);
        const Elem a = alpha.empty() ? def.alpha : elem(R, alpha);
        std::vector<Elem> ps = def.pis;
        if (!pis.empty()) {
            ps.clear();
            for (const auto& p : pis)
                ps.push_back(elem(R, p));
        }
        print_order(canonical_order(R, a, ps), out, "");
        return kSuccess;
    }
    if (is_local(*R)) {
        const OrderParams p = canonical_params(*R);
        print_order(canonical_order(R, p.alpha, p.pis), out, "");
        return kSuccess;
    }
    for (const LocalSummand& s : decompose_local(R)) {
        const OrderParams p = canonical_params(*s.ring);
        out << "summand e=" << R->name(s.idempotent) << " spec " << s.ring->spec() << '\n';
        print_order(canonical_order(s.ring, p.alpha, p.pis), out, "  ");
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// solve / verify

Certificate solve_any(const AnySystem& sys) {
    return std::visit(
        [](const auto& s) -> Certificate {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, LinSystem>)
                return solve_commutative(s);
            else if constexpr (std::is_same_v<S, GroupSystem>)
                return solve_group(s);
            else if constexpr (std::is_same_v<S, TwoSidedSystem>)
                return solve_twosided(s);
            else
                return solve_numerical(s);
        },
        sys);
}

bool verify_any(const AnySystem& sys, const Certificate& cert) {
    return std::visit([&](const auto& s) { return verify_certificate(s, cert); }, sys);
}

int solve(const std::string& path, const std::string& output, const std::string& format, bool oracle_check,
          std::ostream& out, std::ostream& err) {
    const AnySystem sys = load_system(path);
    const Certificate cert = solve_any(sys);
    emit(write_certificate(sys, cert, format == "json" ? Format::Json : Format::Text), output, out);
    const bool solvable = cert.verdict == Verdict::Solvable;
    if (oracle_check) {
        if (!verify_any(sys, cert)) {
            err << "oracle-check: certificate does not verify\n";
            return kViolation;
        }
        try {
            const auto report = std::visit([](const auto& s) { return oracle::decide(s); }, sys);
            if (report.solvable != solvable) {
                err << "oracle-check: mismatch, oracle says " << (report.solvable ? "solvable" : "unsolvable")
                    << '\n';
                return kViolation;
            }
            err << "oracle-check: agree\n";
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CapacityError)
                throw;
            err << "oracle-check: skipped, " << e.what() << '\n';
        }
    }
    return solvable ? kSuccess : kNegative;
}

int verify(const std::string& system_path, const std::string& cert_path, std::ostream& out) {
    const AnySystem sys = load_system(system_path);
    Certificate cert;
    try {
        cert = parse_certificate(read_file(cert_path), sys);
        if (!verify_any(sys, cert)) {
            out << "invalid\n";
            return kNegative;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidCertificate)
            throw;
        out << "invalid: " << e.what() << '\n';
        return kNegative;
    }
    out << "valid " << (cert.verdict == Verdict::Solvable ? "solvable" : "unsolvable") << '\n';
    return kSuccess;
}

// ---------------------------------------------------------------------------
// reduce

std::string size_of(const LinSystem& s) {
    return std::to_string(s.num_rows()) + "x" + std::to_string(s.num_cols()) + " over " + s.ring->spec();
}

int reduce(const std::string& name, const std::vector<std::string>& inputs, const std::string& output,
           const std::string& idempotent, bool trace, std::ostream& out) {
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (inputs.size() < lo || inputs.size() > hi)
            fail(ErrorKind::InvalidArgument, name + " takes " +
                                                 (lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo)) +
                                                 " input file(s)");
    };
    std::vector<std::string> lines;
    AnySystem target;

    auto take = [&](ReductionOutput r) {
        lines = std::move(r.trace);
        std::visit([&](auto& t) { target = std::move(t); }, r.target);
    };
    auto lin = [&](std::size_t i) {
        const AnySystem s = load_system(inputs[i]);
        return expect_kind<LinSystem>(s, inputs[i], "a commutative ring system");
    };

    if (name == "collapse") {
        arity(1, 1);
        const NestedQuery q = parse_nested(read_file(inputs[0]), dir_of(inputs[0]));
        LinSystem t = collapse_nested(q);
        lines.push_back("collapse " + std::to_string(q.outer_rows.size()) + "x" + std::to_string(q.outer_cols.size()) +
                        " nested query -> " + size_of(t));
        target = std::move(t);
    } else if (name == "and" || name == "or") {
        arity(2, 2);
        const LinSystem a = lin(0), b = lin(1);
        LinSystem t = name == "and" ? and_compose(a, b) : or_compose(a, b);
        lines.push_back(name + " " + size_of(a) + ", " + size_of(b) + " -> " + size_of(t));
        target = std::move(t);
    } else if (name == "or-general") {
        arity(1, SIZE_MAX);
        std::vector<LinSystem> parts;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            parts.push_back(lin(i));
        LinSystem t = or_compose_general(parts);
        lines.push_back("or-general over " + std::to_string(parts.size()) + " components -> " + size_of(t) +
                        " (experimental)");
        target = std::move(t);
    } else {
        arity(1, 1);
        const AnySystem src = load_system(inputs[0]);
        if (name == "ring-to-cyclic") {
            const auto& s = expect_kind<LinSystem>(src, inputs[0], "a commutative ring system");
            take(ring_to_cyclic(s, make_cyclic_frame(s.ring)));
        } else if (name == "group-to-ring") {
            take(group_to_ring(expect_kind<GroupSystem>(src, inputs[0], "a group system")));
        } else if (name == "twosided-numerical") {
            if (const auto* s = std::get_if<LinSystem>(&src)) {
                TwoSidedSystem t(s->ring);
                t.cols = s->cols;
                for (std::size_t i = 0; i < s->num_rows(); ++i)
                    t.add_row(s->rows[i], s->A[i], {}, s->b[i]);
                take(twosided_to_numerical(t));
            } else {
                take(twosided_to_numerical(expect_kind<TwoSidedSystem>(src, inputs[0], "a ring system")));
            }
        } else if (name == "project-local") {
            const auto& s = expect_kind<LinSystem>(src, inputs[0], "a commutative ring system");
            if (idempotent.empty())
                fail(ErrorKind::InvalidArgument, "project-local needs --idempotent");
            const auto e = s.ring->find(idempotent);
            if (!e)
                fail(ErrorKind::InvalidParameter, "unknown element '" + idempotent + "' of " + s.ring->spec());
            LinSystem t = project_to_local(s, *e);
            lines.push_back("project " + size_of(s) + " onto e=" + idempotent + " -> " + size_of(t));
            target = std::move(t);
        } else if (name == "normal-form") {
            take(normal_form(expect_kind<LinSystem>(src, inputs[0], "a commutative ring system")));
        } else if (name == "complement") {
            take(complement_chain(expect_kind<LinSystem>(src, inputs[0], "a commutative ring system")));
        } else {
            fail(ErrorKind::InvalidArgument, "unknown reduction " + name);
        }
    }
    if (trace)
        for (const auto& l : lines)
            out << "% " << l << '\n';
    emit(write_system(target), output, out);
    return kSuccess;
}

// ---------------------------------------------------------------------------
// mat / oracle

std::string charpoly_text(const CharPoly& chi) {
    std::string s;
    for (Elem c : chi.coeffs)
        s += (s.empty() ? "" : " ") + chi.ring->name(c);
    return s + "\n";
}

int mat_op(const std::string& op, const std::string& path, const std::string& exponent, const std::string& output,
           std::ostream& out) {
    const Matrix A = load_matrix(path);
    if (op == "inverse") {
        const auto inv = inverse(A);
        if (!inv) {
            emit("singular\n", output, out);
            return kNegative;
        }
        emit(write_matrix(*inv), output, out);
    } else if (op == "det") {
        emit(A.ring->name(determinant(A)) + "\n", output, out);
    } else if (op == "charpoly") {
        emit(charpoly_text(charpoly(A)), output, out);
    } else {
        BigNat e;
        if (exponent.empty() || exponent.find_first_not_of("0123456789") != std::string::npos ||
            e.set_str(exponent, 10) != 0)
            fail(ErrorKind::InvalidArgument, "exponent must be a nonnegative integer");
        emit(write_matrix(mat_pow(A, e)), output, out);
    }
    return kSuccess;
}

int oracle_op(const std::string& op, const std::string& path, std::ostream& out) {
    if (op == "solve") {
        const AnySystem sys = load_system(path);
        const auto report = std::visit([](const auto& s) { return oracle::decide(s); }, sys);
        if (!report.solvable) {
            out << "verdict unsolvable\n";
            return kNegative;
        }
        Certificate cert;
        cert.assignment = report.solution;
        out << write_certificate(sys, cert, Format::Text);
        return kSuccess;
    }
    const Matrix A = load_matrix(path);
    if (op == "det") {
        if (!A.is_square())
            fail(ErrorKind::InvalidArgument, "determinant needs a square matrix");
        out << A.ring->name(oracle::det_cofactor(*A.ring, A.entries)) << '\n';
    } else {
        out << oracle::enumerate_gl(*A.ring, static_cast<unsigned>(A.num_rows())).get_str() << '\n';
    }
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app("Solvability of linear equation systems over finite rings and groups", "ringsolve");
    app.require_subcommand(1);

    auto* ring = app.add_subcommand("ring", "Inspect a ring given by its spec");
    ring->require_subcommand(1);
    std::string spec, alpha;
    std::vector<std::string> pis;
    auto* ring_info_cmd = ring->add_subcommand("info", "Size, characteristic, locality and chain data");
    ring_info_cmd->add_option("spec", spec, "Ring spec, e.g. Z/12 or GR(4,2)")->required();
    auto* ring_dec_cmd = ring->add_subcommand("decompose", "Idempotent base and local summands");
    ring_dec_cmd->add_option("spec", spec)->required();
    auto* ring_order_cmd = ring->add_subcommand("order", "Canonical element order and representations");
    ring_order_cmd->add_option("spec", spec)->required();
    ring_order_cmd->add_option("--alpha", alpha, "Primitive residue (local rings)");
    ring_order_cmd->add_option("--pi", pis, "Generators of the maximal ideal (local rings)");

    std::string input, output, format = "text", certificate, exponent, idempotent, reduction;
    std::vector<std::string> inputs;
    bool oracle_check = false, trace = false;

    auto* solve_cmd = app.add_subcommand("solve", "Decide a system and print a certificate");
    solve_cmd->add_option("system", input)->required();
    solve_cmd->add_option("-o,--output", output, "Write the certificate here");
    solve_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    solve_cmd->add_flag("--oracle-check", oracle_check, "Cross-check with the brute-force oracle");

    auto* reduce_cmd = app.add_subcommand("reduce", "Apply an instance reduction");
    reduce_cmd->add_option("name", reduction)->required()->check(CLI::IsMember(kReductions));
    reduce_cmd->add_option("inputs", inputs)->required();
    reduce_cmd->add_option("-o,--output", output);
    reduce_cmd->add_option("-e,--idempotent", idempotent, "Primitive idempotent for project-local");
    reduce_cmd->add_flag("--trace", trace, "Print the reduction trace as comments");

    auto* mat = app.add_subcommand("mat", "Matrix operations");
    mat->require_subcommand(1);
    std::vector<CLI::App*> mat_cmds;
    for (auto [op, help] : {std::pair{"inverse", "Inverse, or \"singular\" with exit status 1"},
                            std::pair{"det", "Determinant"},
                            std::pair{"charpoly", "Coefficients c_0..c_n of det(X*E - A)"},
                            std::pair{"pow", "A^e for a non-negative integer e"}}) {
        auto* c = mat->add_subcommand(op, help);
        c->add_option("matrix", input)->required();
        if (std::string_view(op) == "pow")
            c->add_option("exponent", exponent)->required();
        c->add_option("-o,--output", output);
        mat_cmds.push_back(c);
    }

    auto* orc = app.add_subcommand("oracle", "Brute-force oracles");
    orc->require_subcommand(1);
    std::vector<CLI::App*> oracle_cmds;
    for (auto [op, help] : {std::pair{"solve", "Exhaustive or lattice verdict for a system"},
                            std::pair{"det", "Determinant by cofactor expansion"},
                            std::pair{"gl", "Size of GL_n over the matrix ring by enumeration, n = row count"}}) {
        auto* c = orc->add_subcommand(op, help);
        c->add_option(std::string_view(op) == "solve" ? "system" : "matrix", input)->required();
        oracle_cmds.push_back(c);
    }

    auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against a system");
    verify_cmd->add_option("system", input)->required();
    verify_cmd->add_option("certificate", certificate)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*ring_info_cmd)
            return ring_info(spec, out);
        if (*ring_dec_cmd)
            return ring_decompose(spec, out);
        if (*ring_order_cmd)
            return ring_order(spec, alpha, pis, out);
        if (*solve_cmd)
            return solve(input, output, format, oracle_check, out, err);
        if (*reduce_cmd)
            return reduce(reduction, inputs, output, idempotent, trace, out);
        for (auto* c : mat_cmds)
            if (*c)
                return mat_op(c->get_name(), input, exponent, output, out);
        for (auto* c : oracle_cmds)
            if (*c)
                return oracle_op(c->get_name(), input, out);
        if (*verify_cmd)
            return verify(input, certificate, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kViolation;
    }
    return kUsage;
}

} // namespace ringsolve::cli
