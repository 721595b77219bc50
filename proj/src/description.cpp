#include "quiverstab/description.hpp"

#include "quiverstab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace quiverstab {

const NamedRepresentation* Description::find_rep(std::string_view name) const {
    for (const auto& r : reps) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

const FamilyOverP1* Description::find_family(std::string_view name) const {
    for (const auto& f : families) {
        if (f.name() == name) return &f;
    }
    return nullptr;
}

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

struct Line {
    std::size_t number;
    std::string text; // comment stripped
    std::vector<Token> tokens;
};

std::vector<Token> split_tokens(std::string_view text, std::size_t offset = 0) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        out.push_back({std::string(text.substr(start, i - start)), offset + start + 1});
    }
    return out;
}

[[noreturn]] void fail(const std::string& kind, const std::string& message, std::size_t line, std::size_t column) {
    throw ParseError(kind, message, line, column);
}

Rational rational_at(const Token& tok, std::size_t line) {
    try {
        return parse_rational(tok.text);
    } catch (const std::invalid_argument&) {
        fail("parse.syntax", "expected a rational number, found '" + tok.text + "'", line, tok.column);
    }
}

long long integer_at(const Token& tok, std::size_t line) {
    const Rational q = rational_at(tok, line);
    if (boost::multiprecision::denominator(q) != 1 || abs(q) > Rational(1LL << 40)) {
        fail("parse.syntax", "expected an integer, found '" + tok.text + "'", line, tok.column);
    }
    return static_cast<long long>(boost::multiprecision::numerator(q));
}

std::size_t vertex_at(const Quiver& q, const Token& tok, std::size_t line) {
    const auto v = q.find_vertex(tok.text);
    if (!v) fail("parse.unknown_vertex", "unknown vertex " + tok.text, line, tok.column);
    return *v;
}

std::size_t arrow_at(const Quiver& q, const Token& tok, std::size_t line) {
    const auto a = q.find_arrow(tok.text);
    if (!a) fail("parse.unknown_arrow", "unknown arrow " + tok.text, line, tok.column);
    return *a;
}

/// `p=<prime>` token.
PrimeField prime_at(const Token& tok, std::size_t line) {
    if (tok.text.rfind("p=", 0) != 0) fail("parse.syntax", "expected p=<prime>", line, tok.column);
    Token number{tok.text.substr(2), tok.column + 2};
    const long long p = integer_at(number, line);
    if (p < 2 || p >= (1LL << 31) || !is_prime(static_cast<std::uint64_t>(p))) {
        fail("parse.semantic", "p=" + number.text + " is not a prime below 2^31", line, tok.column);
    }
    return PrimeField(static_cast<std::uint32_t>(p));
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '.' || c == '\'';
}

Relation parse_relation(const Quiver& q, const Line& line, std::size_t body_start) {
    const std::string& s = line.text;
    std::size_t i = body_start;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    std::vector<Term> terms;
    std::vector<std::size_t> term_columns;
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) {
            if (first) fail("parse.syntax", "relation has no terms", line.number, i + 1);
            break;
        }
        Rational sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip_ws();
        } else if (!first) {
            fail("parse.syntax", "expected '+' or '-' between relation terms", line.number, i + 1);
        }
        first = false;
        const std::size_t term_column = i + 1;
        std::vector<Token> factors;
        while (true) {
            skip_ws();
            const std::size_t start = i;
            while (i < s.size() && is_name_char(s[i])) ++i;
            if (i == start) {
                fail("parse.syntax", i < s.size() ? std::string("unexpected '") + s[i] + "'" : "missing path",
                     line.number, i + 1);
            }
            factors.push_back({s.substr(start, i - start), start + 1});
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        Rational coefficient = 1;
        std::size_t first_path = 0;
        if (!q.find_arrow(factors[0].text) && !factors[0].text.empty() &&
            (std::isdigit(static_cast<unsigned char>(factors[0].text[0])) || factors[0].text[0] == '.')) {
            coefficient = rational_at(factors[0], line.number);
            first_path = 1;
            if (factors.size() == 1) {
                fail("parse.syntax", "relation term needs a path", line.number, factors[0].column);
            }
        }
        std::vector<std::size_t> arrows;
        std::optional<std::size_t> trivial_at;
        for (std::size_t k = factors.size(); k-- > first_path;) {
            const Token& f = factors[k];
            if (auto a = q.find_arrow(f.text)) {
                arrows.push_back(*a);
            } else if (f.text.rfind("e_", 0) == 0 && q.find_vertex(f.text.substr(2)) && factors.size() - first_path == 1) {
                trivial_at = *q.find_vertex(f.text.substr(2));
            } else {
                fail("parse.unknown_arrow", "unknown arrow " + f.text, line.number, f.column);
            }
        }
        if (trivial_at) {
            fail("parse.semantic", "relation paths must have length at least one", line.number, term_column);
        }
        try {
            terms.push_back({sign * coefficient, Path::from_arrows(q, std::move(arrows))});
        } catch (const Error& e) {
            fail("parse.semantic", e.what(), line.number, term_column);
        }
        term_columns.push_back(term_column);
    }
    try {
        return Relation::create(std::move(terms));
    } catch (const Error& e) {
        fail("parse.semantic", e.what(), line.number, term_columns.front());
    }
}

struct PolySyntaxError {
    std::size_t offset;
    std::string message;
};

BivariatePoly parse_poly_impl(std::string_view s, const PrimeField& field) {
    const bool expression = s.find_first_of("st") != std::string_view::npos;
    BivariatePoly out;
    if (!expression) {
        std::vector<std::uint32_t> coeffs;
        std::size_t i = 0;
        while (i < s.size()) {
            while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
            if (i >= s.size()) break;
            const std::size_t start = i;
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
            try {
                coeffs.push_back(field.from_rational(parse_rational(s.substr(start, i - start))));
            } catch (const std::invalid_argument&) {
                throw PolySyntaxError{start, "expected a coefficient, found '" + std::string(s.substr(start, i - start)) + "'"};
            } catch (const Error& e) {
                throw PolySyntaxError{start, e.what()};
            }
        }
        if (coeffs.empty()) throw PolySyntaxError{0, "missing coefficients"};
        const int d = static_cast<int>(coeffs.size()) - 1;
        for (int k = 0; k <= d; ++k) {
            if (coeffs[static_cast<std::size_t>(k)] != 0) out.terms[{d - k, k}] = coeffs[static_cast<std::size_t>(k)];
        }
        return out;
    }
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    bool first = true;
    while (true) {
        skip_ws();
        if (i >= s.size()) {
            if (first) throw PolySyntaxError{i, "empty polynomial"};
            break;
        }
        std::uint32_t coeff = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') coeff = field.neg(1);
            ++i;
            skip_ws();
        } else if (!first) {
            throw PolySyntaxError{i, "expected '+' or '-' between terms"};
        }
        first = false;
        int es = 0, et = 0;
        while (true) {
            skip_ws();
            if (i >= s.size()) throw PolySyntaxError{i, "missing factor"};
            if (s[i] == 's' || s[i] == 't') {
                const char var = s[i++];
                int e = 1;
                skip_ws();
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    skip_ws();
                    const std::size_t start = i;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                    if (start == i) throw PolySyntaxError{start, "expected an exponent"};
                    e = std::stoi(std::string(s.substr(start, i - start)));
                }
                (var == 's' ? es : et) += e;
            } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                const std::size_t start = i;
                while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
                try {
                    coeff = field.mul(coeff, field.from_rational(parse_rational(s.substr(start, i - start))));
                } catch (const std::invalid_argument&) {
                    throw PolySyntaxError{start, "malformed coefficient"};
                } catch (const Error& e) {
                    throw PolySyntaxError{start, e.what()};
                }
            } else {
                throw PolySyntaxError{i, std::string("unexpected '") + s[i] + "'"};
            }
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        BivariatePoly term;
        if (coeff != 0) term.terms[{es, et}] = coeff;
        out = poly_add(field, out, term);
    }
    return out;
}

struct RepBlock {
    std::size_t line;
    std::string name;
    PrimeField field;
    DimensionVector dim;
    std::map<std::size_t, std::pair<FpMatrix, std::size_t>> mats; // arrow -> (matrix, line)
};

struct PolyEntry {
    BivariatePoly poly;
    std::size_t line;
    std::size_t column;
};

struct FamilyBlock {
    std::size_t line;
    std::string name;
    PrimeField field;
    std::map<std::size_t, std::vector<int>> splits;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, PolyEntry> polys;
};

const std::set<std::string> kParamKeywords = {"theta", "lambda", "xi", "v"};

ParamsSpec parse_params(const Line& line, std::size_t vertex_count) {
    ParamsSpec spec;
    std::map<std::string, std::vector<Token>> groups;
    std::string current;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        const Token& t = line.tokens[k];
        if (kParamKeywords.count(t.text)) {
            if (groups.count(t.text)) fail("parse.syntax", "duplicate '" + t.text + "'", line.number, t.column);
            current = t.text;
            groups[current];
            continue;
        }
        if (current.empty()) fail("parse.syntax", "expected theta, lambda, xi or v", line.number, t.column);
        groups[current].push_back(t);
    }
    auto vector_of = [&](const std::string& key) {
        const auto& toks = groups.at(key);
        if (toks.size() != vertex_count) {
            fail("parse.semantic",
                 key + " needs " + std::to_string(vertex_count) + " entries, found " + std::to_string(toks.size()),
                 line.number, toks.empty() ? line.tokens[0].column : toks[0].column);
        }
        std::vector<Rational> out;
        for (const auto& t : toks) out.push_back(rational_at(t, line.number));
        return out;
    };
    if (!groups.count("theta")) fail("parse.syntax", "params line needs theta", line.number, line.tokens[0].column);
    spec.theta = vector_of("theta");
    if (groups.count("lambda")) spec.lambda = vector_of("lambda");
    if (groups.count("xi")) {
        const auto& toks = groups.at("xi");
        if (toks.size() != 1) fail("parse.semantic", "xi takes one value", line.number, line.tokens[0].column);
        spec.xi = rational_at(toks[0], line.number);
    }
    if (groups.count("v")) {
        const auto& toks = groups.at("v");
        if (toks.size() != vertex_count) {
            fail("parse.semantic", "v needs " + std::to_string(vertex_count) + " entries", line.number,
                 toks.empty() ? line.tokens[0].column : toks[0].column);
        }
        std::vector<int> v;
        for (const auto& t : toks) {
            const long long x = integer_at(t, line.number);
            if (x < 0) fail("parse.semantic", "dimension vector entries must be nonnegative", line.number, t.column);
            v.push_back(static_cast<int>(x));
        }
        spec.v = DimensionVector(std::move(v));
    }
    return spec;
}

/// Splits "head: rest" and returns the 0-based offset of rest, or throws.
std::size_t colon_split(const Line& line, std::size_t from) {
    const auto colon = line.text.find(':', from);
    if (colon == std::string::npos) fail("parse.syntax", "missing ':'", line.number, line.text.size() + 1);
    return colon;
}

} // namespace

BivariatePoly parse_polynomial(std::string_view text, const PrimeField& field) {
    try {
        return parse_poly_impl(text, field);
    } catch (const PolySyntaxError& e) {
        throw Error("parse.polynomial", "column " + std::to_string(e.offset + 1) + ": " + e.message);
    }
}

Description parse_description(std::string_view text) {
    std::vector<Line> lines;
    {
        std::size_t number = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto end = text.find('\n', pos);
            std::string raw(text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            auto tokens = split_tokens(raw);
            if (!tokens.empty()) lines.push_back({number, raw, std::move(tokens)});
            if (end == std::string_view::npos) break;
            pos = end + 1;
        }
    }

    static const std::set<std::string> keywords = {"vertices", "arrow",  "relation", "tor",  "tor_entry", "rep",
                                                   "mat",      "params", "family",   "split", "poly"};
    const Line* vertices_line = nullptr;
    for (const auto& line : lines) {
        const auto& kw = line.tokens[0];
        if (!keywords.count(kw.text)) fail("parse.syntax", "unknown keyword '" + kw.text + "'", line.number, kw.column);
        if (kw.text == "vertices") {
            if (vertices_line) fail("parse.syntax", "duplicate vertices line", line.number, kw.column);
            vertices_line = &line;
        }
    }
    if (!vertices_line) fail("parse.syntax", "missing vertices line", lines.empty() ? 1 : lines[0].number, 1);

    std::vector<std::string> vertex_ids;
    for (std::size_t k = 1; k < vertices_line->tokens.size(); ++k) {
        const auto& t = vertices_line->tokens[k];
        if (std::find(vertex_ids.begin(), vertex_ids.end(), t.text) != vertex_ids.end()) {
            fail("parse.semantic", "duplicate vertex " + t.text, vertices_line->number, t.column);
        }
        vertex_ids.push_back(t.text);
    }
    if (vertex_ids.empty()) fail("parse.semantic", "at least one vertex is required", vertices_line->number, 1);

    std::vector<Arrow> arrows;
    for (const auto& line : lines) {
        if (line.tokens[0].text != "arrow") continue;
        if (line.tokens.size() != 4) {
            fail("parse.syntax", "expected: arrow <id> <source> <target>", line.number, line.tokens[0].column);
        }
        const auto& name = line.tokens[1];
        for (const auto& a : arrows) {
            if (a.name == name.text) fail("parse.semantic", "duplicate arrow " + name.text, line.number, name.column);
        }
        Arrow a{name.text, 0, 0};
        for (int e = 0; e < 2; ++e) {
            const auto& t = line.tokens[2 + static_cast<std::size_t>(e)];
            const auto it = std::find(vertex_ids.begin(), vertex_ids.end(), t.text);
            if (it == vertex_ids.end()) fail("parse.unknown_vertex", "unknown vertex " + t.text, line.number, t.column);
            (e == 0 ? a.source : a.target) = static_cast<std::size_t>(it - vertex_ids.begin());
        }
        arrows.push_back(std::move(a));
    }
    const Quiver quiver = Quiver::create(vertex_ids, arrows);

    Description doc;
    std::vector<Relation> relations;
    for (const auto& line : lines) {
        if (line.tokens[0].text != "relation") continue;
        Relation r = parse_relation(quiver, line, line.tokens[0].column - 1 + std::string("relation").size());
        if (r.min_length() == 1) {
            doc.warnings.push_back({line.number, line.tokens[0].column,
                                    "relation " + r.render(quiver) + " has a path of length 1 and deletes an arrow"});
        }
        relations.push_back(std::move(r));
    }
    auto pres = std::make_shared<const QuiverPresentation>(quiver, std::move(relations));
    doc.presentation = pres;
    const std::size_t n = quiver.vertex_count();

    // Tor header first so tor_entry lines may precede it.
    for (const auto& line : lines) {
        if (line.tokens[0].text != "tor") continue;
        if (doc.tor) fail("parse.syntax", "duplicate tor line", line.number, line.tokens[0].column);
        std::size_t k = 1;
        if (k < line.tokens.size() && line.tokens[k].text == "gldim") ++k;
        if (k + 1 != line.tokens.size()) fail("parse.syntax", "expected: tor gldim <g>", line.number, line.tokens[0].column);
        const long long g = integer_at(line.tokens[k], line.number);
        if (g < 0) fail("parse.semantic", "global dimension must be nonnegative", line.number, line.tokens[k].column);
        doc.tor.emplace(n, static_cast<std::size_t>(g));
    }
    for (const auto& line : lines) {
        if (line.tokens[0].text != "tor_entry") continue;
        if (!doc.tor) fail("parse.semantic", "tor_entry without a tor line", line.number, line.tokens[0].column);
        if (line.tokens.size() != 5) {
            fail("parse.syntax", "expected: tor_entry <degree> <vertex> <vertex> <multiplicity>", line.number,
                 line.tokens[0].column);
        }
        const long long l = integer_at(line.tokens[1], line.number);
        if (l < 0) fail("parse.semantic", "degree must be nonnegative", line.number, line.tokens[1].column);
        const std::size_t i = vertex_at(quiver, line.tokens[2], line.number);
        const std::size_t j = vertex_at(quiver, line.tokens[3], line.number);
        const long long d = integer_at(line.tokens[4], line.number);
        if (d < 0) fail("parse.semantic", "multiplicity must be nonnegative", line.number, line.tokens[4].column);
        doc.tor->set(static_cast<std::size_t>(l), i, j, d);
    }
    if (doc.tor) {
        try {
            doc.tor->validate();
        } catch (const Error& e) {
            fail("parse.semantic", e.what(), 1, 1);
        }
    }

    std::vector<RepBlock> reps;
    std::vector<FamilyBlock> families;
    enum class Block { none, rep, family } block = Block::none;
    for (const auto& line : lines) {
        const auto& kw = line.tokens[0].text;
        if (kw == "params") {
            doc.params.push_back(parse_params(line, n));
        } else if (kw == "rep") {
            if (line.tokens.size() < 4 || line.tokens[3].text != "dim") {
                fail("parse.syntax", "expected: rep <name> p=<prime> dim <d>...", line.number, line.tokens[0].column);
            }
            const auto& name = line.tokens[1];
            for (const auto& r : reps) {
                if (r.name == name.text) fail("parse.semantic", "duplicate rep " + name.text, line.number, name.column);
            }
            const PrimeField field = prime_at(line.tokens[2], line.number);
            if (line.tokens.size() - 4 != n) {
                fail("parse.semantic", "dim needs " + std::to_string(n) + " entries", line.number, line.tokens[3].column);
            }
            std::vector<int> dim;
            for (std::size_t k = 4; k < line.tokens.size(); ++k) {
                const long long d = integer_at(line.tokens[k], line.number);
                if (d < 0) fail("parse.semantic", "dimensions must be nonnegative", line.number, line.tokens[k].column);
                dim.push_back(static_cast<int>(d));
            }
            reps.push_back({line.number, name.text, field, DimensionVector(std::move(dim)), {}});
            block = Block::rep;
        } else if (kw == "mat") {
            if (block != Block::rep) fail("parse.semantic", "mat outside a rep block", line.number, line.tokens[0].column);
            RepBlock& rep = reps.back();
            const auto colon = colon_split(line, line.tokens[0].column);
            const auto head = split_tokens(std::string_view(line.text).substr(0, colon));
            if (head.size() != 4) fail("parse.syntax", "expected: mat <arrow> <rows> <cols>: <entries>", line.number, line.tokens[0].column);
            const std::size_t a = arrow_at(quiver, head[1], line.number);
            if (rep.mats.count(a)) fail("parse.semantic", "duplicate mat for arrow " + head[1].text, line.number, head[1].column);
            const long long rows = integer_at(head[2], line.number);
            const long long cols = integer_at(head[3], line.number);
            const auto& arrow = quiver.arrow(a);
            if (rows != rep.dim[arrow.target] || cols != rep.dim[arrow.source]) {
                fail("parse.semantic",
                     "arrow " + arrow.name + " needs a " + std::to_string(rep.dim[arrow.target]) + "x" +
                         std::to_string(rep.dim[arrow.source]) + " matrix",
                     line.number, head[2].column);
            }
            const auto entries = split_tokens(std::string_view(line.text).substr(colon + 1), colon + 1);
            if (entries.size() != static_cast<std::size_t>(rows * cols)) {
                fail("parse.semantic",
                     "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(entries.size()),
                     line.number, colon + 2);
            }
            FpMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), 0);
            for (std::size_t k = 0; k < entries.size(); ++k) {
                try {
                    m.data()[k] = rep.field.from_rational(rational_at(entries[k], line.number));
                } catch (const ParseError&) {
                    throw;
                } catch (const Error& e) {
                    fail("parse.semantic", e.what(), line.number, entries[k].column);
                }
            }
            rep.mats.emplace(a, std::make_pair(std::move(m), line.number));
        } else if (kw == "family") {
            if (line.tokens.size() != 3) fail("parse.syntax", "expected: family <name> p=<prime>", line.number, line.tokens[0].column);
            const auto& name = line.tokens[1];
            for (const auto& f : families) {
                if (f.name == name.text) fail("parse.semantic", "duplicate family " + name.text, line.number, name.column);
            }
            families.push_back({line.number, name.text, prime_at(line.tokens[2], line.number), {}, {}});
            block = Block::family;
        } else if (kw == "split") {
            if (block != Block::family) fail("parse.semantic", "split outside a family block", line.number, line.tokens[0].column);
            if (line.tokens.size() < 2) fail("parse.syntax", "expected: split <vertex> <ints>", line.number, line.tokens[0].column);
            const std::size_t v = vertex_at(quiver, line.tokens[1], line.number);
            auto& fam = families.back();
            if (fam.splits.count(v)) fail("parse.semantic", "duplicate split for vertex " + line.tokens[1].text, line.number, line.tokens[1].column);
            std::vector<int> type;
            for (std::size_t k = 2; k < line.tokens.size(); ++k) type.push_back(static_cast<int>(integer_at(line.tokens[k], line.number)));
            fam.splits[v] = std::move(type);
        } else if (kw == "poly") {
            if (block != Block::family) fail("parse.semantic", "poly outside a family block", line.number, line.tokens[0].column);
            auto& fam = families.back();
            const auto colon = colon_split(line, line.tokens[0].column);
            const auto head = split_tokens(std::string_view(line.text).substr(0, colon));
            if (head.size() != 4) fail("parse.syntax", "expected: poly <arrow> <row> <col>: <polynomial>", line.number, line.tokens[0].column);
            const std::size_t a = arrow_at(quiver, head[1], line.number);
            const long long row = integer_at(head[2], line.number);
            const long long col = integer_at(head[3], line.number);
            if (row < 1 || col < 1) fail("parse.semantic", "rows and columns are numbered from 1", line.number, head[2].column);
            const auto key = std::make_tuple(a, static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1));
            if (fam.polys.count(key)) fail("parse.semantic", "duplicate poly entry", line.number, head[1].column);
            BivariatePoly f;
            try {
                f = parse_poly_impl(std::string_view(line.text).substr(colon + 1), fam.field);
            } catch (const PolySyntaxError& e) {
                fail("parse.syntax", e.message, line.number, colon + 2 + e.offset);
            }
            fam.polys[key] = {std::move(f), line.number, head[1].column};
        }
    }

    for (auto& rb : reps) {
        std::vector<FpMatrix> maps;
        for (std::size_t a = 0; a < quiver.arrow_count(); ++a) {
            const auto& arrow = quiver.arrow(a);
            auto it = rb.mats.find(a);
            maps.push_back(it != rb.mats.end() ? it->second.first
                                                : FpMatrix(static_cast<std::size_t>(rb.dim[arrow.target]),
                                                           static_cast<std::size_t>(rb.dim[arrow.source]), 0));
        }
        try {
            doc.reps.push_back({rb.name, Representation::create(pres, rb.field, rb.dim, std::move(maps))});
        } catch (const Error& e) {
            throw ParseError(e.kind(), "rep " + rb.name + ": " + e.what(), rb.line, 1);
        }
    }

    for (auto& fb : families) {
        std::vector<std::vector<int>> splitting;
        for (std::size_t v = 0; v < n; ++v) {
            auto it = fb.splits.find(v);
            if (it == fb.splits.end()) {
                fail("parse.semantic", "family " + fb.name + " has no split line for vertex " + quiver.vertex_id(v),
                     fb.line, 1);
            }
            splitting.push_back(it->second);
        }
        std::vector<std::vector<BivariatePoly>> entries;
        for (std::size_t a = 0; a < quiver.arrow_count(); ++a) {
            const auto& arrow = quiver.arrow(a);
            entries.emplace_back(splitting[arrow.target].size() * splitting[arrow.source].size());
        }
        for (auto& [key, entry] : fb.polys) {
            const auto [a, row, col] = key;
            const auto& arrow = quiver.arrow(a);
            const auto& tgt = splitting[arrow.target];
            const auto& src = splitting[arrow.source];
            if (row >= tgt.size() || col >= src.size()) {
                fail("parse.semantic",
                     "arrow " + arrow.name + " has a " + std::to_string(tgt.size()) + "x" + std::to_string(src.size()) +
                         " matrix in this family",
                     entry.line, entry.column);
            }
            const int expected = tgt[row] - src[col];
            for (const auto& [exp, c] : entry.poly.terms) {
                if (exp.first + exp.second != expected) {
                    fail("families.degree",
                         "entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ") of arrow " +
                             arrow.name +
                             (expected < 0 ? std::string(" must be zero")
                                           : " must be homogeneous of degree " + std::to_string(expected)) +
                             ", found " + to_string(entry.poly),
                         entry.line, entry.column);
                }
            }
            entries[a][row * src.size() + col] = entry.poly;
        }
        try {
            doc.families.push_back(FamilyOverP1::create(fb.name, pres, fb.field, std::move(splitting), std::move(entries)));
        } catch (const Error& e) {
            throw ParseError(e.kind(), "family " + fb.name + ": " + e.what(), fb.line, 1);
        }
    }
    return doc;
}

QuiverPresentation parse_presentation(std::string_view text) { return *parse_description(text).presentation; }

std::string render_description(const Description& doc) {
    const Quiver& q = doc.presentation->quiver();
    std::ostringstream os;
    os << render_presentation(*doc.presentation);
    if (doc.tor) {
        os << "tor gldim " << doc.tor->global_dimension() << '\n';
        for (std::size_t l = 0; l <= doc.tor->max_degree(); ++l) {
            for (std::size_t i = 0; i < q.vertex_count(); ++i) {
                for (std::size_t j = 0; j < q.vertex_count(); ++j) {
                    const long long d = doc.tor->get(l, i, j);
                    if (d != (l == 0 && i == j ? 1 : 0)) {
                        os << "tor_entry " << l << ' ' << q.vertex_id(i) << ' ' << q.vertex_id(j) << ' ' << d << '\n';
                    }
                }
            }
        }
    }
    for (const auto& spec : doc.params) {
        os << "params theta";
        for (const auto& x : spec.theta) os << ' ' << to_string(x);
        if (spec.lambda) {
            os << " lambda";
            for (const auto& x : *spec.lambda) os << ' ' << to_string(x);
        }
        if (spec.xi) os << " xi " << to_string(*spec.xi);
        if (spec.v) {
            os << " v";
            for (int x : spec.v->entries()) os << ' ' << x;
        }
        os << '\n';
    }
    for (const auto& [name, rep] : doc.reps) {
        os << "rep " << name << " p=" << rep.field().modulus() << " dim";
        for (int x : rep.dim().entries()) os << ' ' << x;
        os << '\n';
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& m = rep.map(a);
            if (m.data().empty()) continue;
            os << "mat " << q.arrow(a).name << ' ' << m.rows() << ' ' << m.cols() << ':';
            for (auto x : m.data()) os << ' ' << x;
            os << '\n';
        }
    }
    for (const auto& fam : doc.families) {
        os << "family " << fam.name() << " p=" << fam.field().modulus() << '\n';
        for (std::size_t v = 0; v < q.vertex_count(); ++v) {
            os << "split " << q.vertex_id(v);
            for (int a : fam.splitting()[v]) os << ' ' << a;
            os << '\n';
        }
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            const auto& arrow = q.arrow(a);
            const std::size_t cols = fam.splitting()[arrow.source].size();
            const auto& entries = fam.arrow_entries(a);
            for (std::size_t k = 0; k < entries.size(); ++k) {
                if (entries[k].is_zero()) continue;
                os << "poly " << arrow.name << ' ' << k / cols + 1 << ' ' << k % cols + 1 << ": " << to_string(entries[k])
                   << '\n';
            }
        }
    }
    return os.str();
}

} // namespace quiverstab
