#include "coha/format.hpp"

#include <cctype>

namespace coha {

TautGen parse_gen(const std::string& token, const CurveCohomology& X,
                  const std::string& arg_name) {
    auto fail = [&]() -> TautGen {
        throw std::invalid_argument(arg_name + ": malformed generator \"" + token +
                                    "\" (expected c<i>.<basis>)");
    };
    if (token.size() < 3 || token[0] != 'c') return fail();
    auto dot = token.find('.');
    if (dot == std::string::npos || dot == 1 + token.size()) return fail();
    long long i = 0;
    try {
        std::size_t used = 0;
        i = std::stoll(token.substr(1, dot - 1), &used);
        if (used != dot - 1) return fail();
    } catch (const std::exception&) { return fail(); }
    int pi;
    try {
        pi = X.parse_name(token.substr(dot + 1));
    } catch (const std::invalid_argument&) { return fail(); }
    TautGen g{i, pi};
    if (!gen_valid(g, X))
        throw std::invalid_argument(arg_name + ": \"" + token +
                                    "\" is not a tautological generator (need i >= 2, or i = 1 with basis != w)");
    return g;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    const std::string& arg;

    void skip_ws() { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; }
    bool done() { skip_ws(); return pos >= s.size(); }
    char peek() { skip_ws(); return pos < s.size() ? s[pos] : '\0'; }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument(arg + ": " + msg + " at position " + std::to_string(pos) +
                                    " in \"" + s + "\"");
    }

    std::string read_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected a number");
        return s.substr(start, pos - start);
    }

    Rat read_rational() {
        Int n(read_number());
        if (eat('/')) return Rat(n, Int(read_number()));
        return Rat(n);
    }

    std::string read_gen_token() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum((unsigned char)s[pos]) || s[pos] == '.'))
            ++pos;
        if (pos == start) fail("expected a generator");
        return s.substr(start, pos - start);
    }
};

} // namespace

HPoly parse_hpoly(const std::string& text, long long genus, const std::string& arg_name) {
    CurveCohomology X(genus);
    Cursor cur{text, 0, arg_name};
    HPoly poly = hpoly_zero(genus);
    bool first = true;
    while (!cur.done()) {
        Rat sign(1);
        if (cur.eat('-')) sign = -1;
        else if (cur.eat('+')) {
            if (first) cur.fail("unexpected leading '+'");
        } else if (!first) {
            cur.fail("expected '+' or '-' between terms");
        }
        first = false;
        // term: optional rational coefficient, then '*'-joined generator powers
        Rat coeff = sign;
        HPoly term = hpoly_one(genus);
        bool saw_factor = false;
        if (std::isdigit((unsigned char)cur.peek())) {
            coeff *= cur.read_rational();
            saw_factor = true;
            if (!cur.eat('*')) {
                poly += term * coeff;
                continue;
            }
        }
        while (true) {
            if (cur.peek() != 'c') cur.fail("expected a generator c<i>.<basis>");
            TautGen g = parse_gen(cur.read_gen_token(), X, arg_name);
            long long exp = 1;
            if (cur.eat('^')) exp = std::stoll(cur.read_number());
            if (exp < 0) cur.fail("negative exponent");
            HPoly gp = hpoly_gen(genus, g);
            for (long long k = 0; k < exp; ++k) term = term.mul(gp);
            saw_factor = true;
            if (!cur.eat('*')) break;
            if (std::isdigit((unsigned char)cur.peek())) {
                coeff *= cur.read_rational();
                if (!cur.eat('*')) break;
            }
        }
        if (!saw_factor) cur.fail("empty term");
        poly += term * coeff;
    }
    if (first) throw std::invalid_argument(arg_name + ": empty polynomial");
    return poly;
}

} // namespace coha
