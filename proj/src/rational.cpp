#include "octet/rational.hpp"

#include "octet/errors.hpp"

namespace octet {

std::string to_fraction_string(const rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

rational parse_rational(const std::string& s) {
    if (s.empty()) throw invalid_input("empty rational");
    rational q;
    if (q.set_str(s, 10) != 0) throw invalid_input("bad rational: " + s);
    if (q.get_den() == 0) throw invalid_input("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::optional<rational> rational_sqrt(const rational& q) {
    if (q < 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_den_mpz_t()) == 0) return std::nullopt;
    rational r(sqrt(q.get_num()), sqrt(q.get_den()));
    r.canonicalize();
    return r;
}

rational make_rational(std::int64_t num, std::int64_t den) {
    static_assert(sizeof(long) == sizeof(std::int64_t));
    if (den == 0) throw invalid_input("zero denominator");
    rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    q.canonicalize();
    return q;
}

std::int64_t to_int64(const rational& q) {
    if (q.get_den() != 1) throw invariant_violation("expected an integer, got " + to_fraction_string(q));
    if (!q.get_num().fits_slong_p()) throw invariant_violation("integer out of range");
    return q.get_num().get_si();
}

}  // namespace octet
