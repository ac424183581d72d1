// Exact scalar arithmetic: rationals (GMP-backed) and prime fields.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace ainfty {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Ground field descriptor: characteristic 0 (rationals) or a prime p.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind{Kind::rationals};
    std::uint32_t characteristic{0};

    static FieldSpec q() { return {Kind::rationals, 0}; }
    static FieldSpec fp(std::uint32_t p) { return {Kind::prime_field, p}; }

    bool operator==(const FieldSpec&) const = default;

    std::string str() const
    {
        return kind == Kind::rationals ? std::string("Q") : "F_" + std::to_string(characteristic);
    }
};

inline bool is_prime(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Element of F_p with the modulus held as process-wide context. All scalars
/// of one computation share one field, so the context is set once (RAII guard
/// below) before any F_p arithmetic.
class Fp {
public:
    Fp() = default;
    Fp(long long n) : v_(reduce(n)) {}
    Fp(int n) : Fp(static_cast<long long>(n)) {}

    static void set_modulus(std::uint32_t p)
    {
        if (!is_prime(p))
            throw Error("F_p modulus must be prime, got " + std::to_string(p));
        modulus_ref() = p;
    }
    static std::uint32_t modulus()
    {
        std::uint32_t p = modulus_ref();
        if (p == 0)
            throw Error("F_p modulus not set");
        return p;
    }

    std::uint32_t value() const { return v_; }

    Fp operator-() const { return from_raw(v_ == 0 ? 0 : modulus() - v_); }
    Fp operator+(const Fp& o) const { return from_raw((v_ + o.v_) % modulus()); }
    Fp operator-(const Fp& o) const { return *this + (-o); }
    Fp operator*(const Fp& o) const
    {
        return from_raw(static_cast<std::uint64_t>(v_) * o.v_ % modulus());
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    Fp inverse() const
    {
        if (v_ == 0)
            throw Error("division by zero in F_p");
        // Fermat: v^(p-2)
        std::uint64_t base = v_, acc = 1, e = modulus() - 2, p = modulus();
        while (e) {
            if (e & 1)
                acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return from_raw(static_cast<std::uint32_t>(acc));
    }

    bool operator==(const Fp& o) const { return v_ == o.v_; }
    bool operator!=(const Fp& o) const { return v_ != o.v_; }
    bool operator<(const Fp& o) const { return v_ < o.v_; }

private:
    static std::uint32_t& modulus_ref()
    {
        static std::uint32_t p = 0;
        return p;
    }
    static std::uint32_t reduce(long long n)
    {
        long long p = modulus();
        long long r = n % p;
        return static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }
    static Fp from_raw(std::uint32_t v)
    {
        Fp x;
        x.v_ = v;
        return x;
    }

    std::uint32_t v_{0};
};

/// Scoped modulus setter for tests and CLI dispatch.
struct FpContext {
    explicit FpContext(std::uint32_t p) { Fp::set_modulus(p); }
};

inline std::ostream& operator<<(std::ostream& os, const Fp& x)
{
    return os << x.value();
}

// --- field traits used by the templated engine ---------------------------

template <typename K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static FieldSpec spec() { return FieldSpec::q(); }
    static std::string str(const Rational& x) { return x.str(); }
    static Rational from_integer(long long n) { return Rational(n); }
};

template <>
struct FieldTraits<Fp> {
    static FieldSpec spec() { return FieldSpec::fp(Fp::modulus()); }
    static std::string str(const Fp& x) { return std::to_string(x.value()); }
    static Fp from_integer(long long n) { return Fp(n); }
};

template <typename K>
bool is_zero(const K& x)
{
    return x == K(0);
}

} // namespace ainfty

namespace Eigen {

template <>
struct NumTraits<ainfty::Fp> {
    using Real = ainfty::Fp;
    using NonInteger = ainfty::Fp;
    using Nested = ainfty::Fp;
    using Literal = long long;
    enum {
        IsComplex = 0,
        IsInteger = 1,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4
    };
    static inline Real epsilon() { return ainfty::Fp(0); }
    static inline Real dummy_precision() { return ainfty::Fp(0); }
    static inline int digits10() { return 9; }
};

} // namespace Eigen
