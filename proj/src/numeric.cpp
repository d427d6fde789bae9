#include "vsep/numeric.hpp"

#include "vsep/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace vsep {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::EulerViolation: return "EulerViolation";
        case Errc::Disconnected: return "Disconnected";
        case Errc::NonPositiveWeight: return "NonPositiveWeight";
        case Errc::NotSimple: return "NotSimple";
        case Errc::Unreachable: return "Unreachable";
        case Errc::InvalidObject: return "InvalidObject";
        case Errc::NotIndependent: return "NotIndependent";
        case Errc::FamilyTooSmall: return "FamilyTooSmall";
        case Errc::ExhaustedAttempts: return "ExhaustedAttempts";
        case Errc::PreconditionWeight: return "PreconditionWeight";
        case Errc::BridgePresent: return "BridgePresent";
        case Errc::DegenerateBridgeComponent: return "DegenerateBridgeComponent";
        case Errc::MeasureAxiomViolated: return "MeasureAxiomViolated";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::ZeroWeight: return "ZeroWeight";
        case Errc::TooLarge: return "TooLarge";
        case Errc::DuplicatePoints: return "DuplicatePoints";
        case Errc::NonSimplePolygon: return "NonSimplePolygon";
        case Errc::EmptyObject: return "EmptyObject";
        case Errc::PrecisionExhausted: return "PrecisionExhausted";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view s) {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    Rational out;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw Error(Errc::ParseError, "malformed rational '" + std::string(s) + "'");
        Integer d{std::string(den)};
        if (d == 0) throw Error(Errc::ParseError, "zero denominator");
        out = Rational(Integer(std::string(num)), d);
        out.canonicalize();
    } else if (dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp)) throw Error(Errc::ParseError, "malformed decimal '" + std::string(s) + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip));
        out = Rational(whole * scale + Integer(std::string(fp)), scale);
        out.canonicalize();
    } else {
        if (!all_digits(s)) throw Error(Errc::ParseError, "malformed rational '" + std::string(s) + "'");
        out = Rational(Integer(std::string(s)));
    }
    return neg ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

Rational ln_upper(const Rational& x, unsigned frac_bits) {
    if (sgn(x) <= 0) throw Error(Errc::InvalidArgument, "ln of nonpositive value");
    mpfr_t a;
    mpfr_init2(a, frac_bits + 128);
    mpfr_set_q(a, x.get_mpq_t(), MPFR_RNDU);
    mpfr_log(a, a, MPFR_RNDU);
    mpfr_mul_2ui(a, a, frac_bits, MPFR_RNDU);
    mpfr_ceil(a, a);
    Integer z;
    mpfr_get_z(z.get_mpz_t(), a, MPFR_RNDU);
    mpfr_clear(a);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, frac_bits);
    Rational out(z, den);
    out.canonicalize();
    return out;
}

Rational floor_q(const Rational& q) {
    Integer z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(z);
}

Rational ceil_q(const Rational& q) {
    Integer z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(z);
}

namespace {

std::mutex g_sf_mutex;
std::unordered_map<std::string, std::pair<Integer, Integer>> g_sf_cache;

void squarefree_split_u64(std::uint64_t x, std::uint64_t& c, std::uint64_t& m) {
    c = 1;
    m = 1;
    auto strip = [&](std::uint64_t p) {
        while (x % p == 0) {
            x /= p;
            if (x % p == 0) {
                x /= p;
                c *= p;
            } else {
                m *= p;
            }
        }
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; p <= x / p / p; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (x > 1) {
        auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
        while (r * r > x) --r;
        while ((r + 1) * (r + 1) <= x) ++r;
        if (r * r == x) c *= r;
        else m *= x;
    }
}

}  // namespace

void squarefree_split(const Integer& x_in, Integer& c, Integer& m) {
    if (x_in <= 0) throw Error(Errc::InvalidArgument, "squarefree_split of nonpositive");
    if (x_in.fits_ulong_p()) {
        std::uint64_t cc = 0, mm = 0;
        squarefree_split_u64(x_in.get_ui(), cc, mm);
        c = Integer(static_cast<unsigned long>(cc));
        m = Integer(static_cast<unsigned long>(mm));
        return;
    }
    std::string key = x_in.get_str(16);
    {
        std::lock_guard<std::mutex> lock(g_sf_mutex);
        auto it = g_sf_cache.find(key);
        if (it != g_sf_cache.end()) {
            c = it->second.first;
            m = it->second.second;
            return;
        }
    }
    Integer x = x_in;
    c = 1;
    m = 1;
    auto strip = [&](const Integer& p) {
        while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
            x /= p;
            if (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
                x /= p;
                c *= p;
            } else {
                m *= p;
            }
        }
    };
    strip(2);
    strip(3);
    for (Integer p = 5; p * p * p <= x; p += 6) {
        strip(p);
        Integer q = p + 2;
        strip(q);
    }
    if (x > 1) {
        if (mpz_perfect_square_p(x.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
            c *= r;
        } else {
            m *= x;
        }
    }
    std::lock_guard<std::mutex> lock(g_sf_mutex);
    g_sf_cache.emplace(key, std::make_pair(c, m));
}

namespace {
std::atomic<unsigned> g_precision_cap{1u << 14};
}

void Length::set_precision_cap(unsigned bits) { g_precision_cap = bits; }
unsigned Length::precision_cap() { return g_precision_cap; }

Length::Length(const Rational& q) : q_(q) {
    if (sgn(q_) < 0) throw Error(Errc::InvalidArgument, "negative length " + to_string(q_));
    refresh_approx();
}

Length Length::infinity() {
    Length l;
    l.inf_ = true;
    return l;
}

Length Length::sqrt_of(const Rational& r) {
    if (sgn(r) < 0) throw Error(Errc::InvalidArgument, "sqrt of negative");
    Length l;
    if (sgn(r) == 0) return l;
    Integer x = r.get_num() * r.get_den();
    Integer c, m;
    squarefree_split(x, c, m);
    Rational coeff(c, r.get_den());
    coeff.canonicalize();
    if (m == 1) {
        l.q_ = coeff;
    } else {
        l.terms_.push_back(Term{m, coeff});
    }
    l.refresh_approx();
    return l;
}

void Length::refresh_approx() {
    double a = q_.get_d();
    double mag = std::fabs(a);
    for (const auto& t : terms_) {
        double v = t.c.get_d() * std::sqrt(t.m.get_d());
        a += v;
        mag += std::fabs(v);
    }
    approx_ = a;
    err_ = mag * 1e-12 + 1e-290;
}

Length& Length::operator+=(const Length& o) {
    if (inf_ || o.inf_) {
        *this = infinity();
        return *this;
    }
    q_ += o.q_;
    if (!o.terms_.empty()) {
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].m < o.terms_[j].m)) {
                merged.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].m < terms_[i].m) {
                merged.push_back(o.terms_[j++]);
            } else {
                Rational c = terms_[i].c + o.terms_[j].c;
                if (sgn(c) != 0) merged.push_back(Term{terms_[i].m, c});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(merged);
    }
    refresh_approx();
    return *this;
}

Length Length::operator-() const {
    if (inf_) throw Error(Errc::InvalidArgument, "negating infinity");
    Length l;
    l.q_ = -q_;
    for (const auto& t : terms_) l.terms_.push_back(Term{t.m, -t.c});
    l.refresh_approx();
    return l;
}

int Length::exact_sign(unsigned bits) const {
    const unsigned cap = g_precision_cap;
    for (; bits <= cap; bits *= 2) {
        Rational lo = q_, hi = q_;
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
        for (const auto& t : terms_) {
            Integer s;
            Integer big = t.m * scale * scale;
            mpz_sqrt(s.get_mpz_t(), big.get_mpz_t());
            Rational a(s, scale), b(Integer(s + 1), scale);
            a.canonicalize();
            b.canonicalize();
            if (sgn(t.c) > 0) {
                lo += t.c * a;
                hi += t.c * b;
            } else {
                lo += t.c * b;
                hi += t.c * a;
            }
        }
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
    }
    throw Error(Errc::PrecisionExhausted, "sign undecided at " + std::to_string(cap) + " bits");
}

int Length::sign() const {
    if (inf_) return 1;
    if (terms_.empty()) return sgn(q_);
    if (approx_ > err_) return 1;
    if (approx_ < -err_) return -1;
    return exact_sign(64);
}

bool operator==(const Length& a, const Length& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    if (a.q_ != b.q_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const Length& a, const Length& b) {
    if (a.inf_ || b.inf_) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (a.terms_.empty() && b.terms_.empty()) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    double d = a.approx_ - b.approx_;
    double e = a.err_ + b.err_;
    if (d > e) return std::strong_ordering::greater;
    if (d < -e) return std::strong_ordering::less;
    if (a == b) return std::strong_ordering::equal;
    Length diff = a;
    diff.q_ -= b.q_;
    for (const auto& t : b.terms_) {
        Length neg;
        neg.terms_.push_back(Length::Term{t.m, -t.c});
        diff += neg;
    }
    if (diff.terms_.empty()) {
        int c = sgn(diff.q_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    int s = diff.exact_sign(64);
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Length::str() const {
    if (inf_) return "inf";
    if (terms_.empty()) return to_string(q_);
    std::string out;
    if (sgn(q_) != 0) out = to_string(q_);
    for (const auto& t : terms_) {
        std::string c = to_string(abs(t.c));
        std::string piece = (c == "1" ? std::string() : c + "*") + "sqrt(" + t.m.get_str() + ")";
        if (sgn(t.c) < 0) out += "-" + piece;
        else out += (out.empty() ? "" : "+") + piece;
    }
    return out;
}

Length Length::parse(std::string_view s) {
    s = trim(s);
    if (s == "inf") return infinity();
    // split at top-level +/-, keeping the sign with each piece
    std::vector<std::pair<bool, std::string_view>> pieces;
    int depth = 0;
    std::size_t start = 0;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        start = 1;
    }
    for (std::size_t i = start; i <= s.size(); ++i) {
        if (i == s.size() || (depth == 0 && (s[i] == '+' || s[i] == '-') && i > start)) {
            pieces.emplace_back(neg, s.substr(start, i - start));
            if (i < s.size()) {
                neg = s[i] == '-';
                start = i + 1;
            }
        } else if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        }
    }
    Length out;
    out.q_ = 0;
    for (auto [n, p] : pieces) {
        p = trim(p);
        auto sq = p.find("sqrt(");
        if (sq == std::string_view::npos) {
            Rational q = parse_rational(p);
            out.q_ += n ? Rational(-q) : q;
            continue;
        }
        if (p.back() != ')') throw Error(Errc::ParseError, "malformed sqrt term '" + std::string(p) + "'");
        Rational coeff = 1;
        if (sq > 0) {
            auto cs = trim(p.substr(0, sq));
            if (cs.empty() || cs.back() != '*') throw Error(Errc::ParseError, "malformed sqrt coefficient '" + std::string(p) + "'");
            coeff = parse_rational(cs.substr(0, cs.size() - 1));
        }
        Rational rad = parse_rational(p.substr(sq + 5, p.size() - sq - 6));
        Length t = sqrt_of(rad);
        t.q_ *= coeff;
        for (auto& term : t.terms_) term.c *= coeff;
        if (n) t = -t;
        out += t;
    }
    out.refresh_approx();
    if (out.sign() < 0) throw Error(Errc::ParseError, "negative length '" + std::string(s) + "'");
    return out;
}

}  // namespace vsep
