// Plain-text structured documents describing involutive A-infinity
// structures, bimodules over them, and morphisms between declared algebras.
//
// Format (one record per line, '#' comments):
//   field q            or: field f 5
//   algebra NAME
//     basis e 0                      name, degree
//     star g1 -> g3                  linear combination; identity if omitted
//     op 2 (e e) -> e 1              m_n entry: arity, args, output, exact coeff
//   end
//   bimodule NAME                    over the first (principal) algebra
//     basis m 0
//     star m -> m
//     component 1 0 (e m) -> m -1    b_{p,q} entry on suspended slots
//   end
//   morphism NAME to TARGET          source is the principal algebra
//     component 1 (g0) -> e 1        f_n entry on suspended letters
//   end
//
// Coefficients are exact literals: integers, a/b, or "n mod p" (validated
// against the field). Operation records are the unsuspended m_n (degree
// n-2); bimodule and morphism components are the suspended b_{p,q} / f_n.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainfty/scalar.hpp"

namespace ainfty {

struct CoeffLiteral {
    long long num{0};
    long long den{1};
    std::optional<std::uint32_t> mod; // present for "n mod p"
    std::string text;                 // original spelling
};

struct StarRecord {
    std::string source;
    std::vector<std::pair<CoeffLiteral, std::string>> terms;
    int line{0};
};

struct OpRecord {
    int arity{0};
    std::vector<std::string> args;
    std::string output;
    CoeffLiteral coeff;
    int line{0};
};

struct ComponentRecord {
    int p{0}, q{0};                 // bimodule bidegree; morphism records use p = arity
    std::vector<std::string> args;  // p letters, module element, q letters
    std::string output;
    CoeffLiteral coeff;
    int line{0};
};

struct BasisRecord {
    std::string name;
    int degree{0};
    int line{0};
};

struct AlgebraBlock {
    std::string name;
    std::vector<BasisRecord> basis;
    std::vector<StarRecord> stars;
    std::vector<OpRecord> ops;
    int line{0};
};

struct BimoduleBlock {
    std::string name;
    std::vector<BasisRecord> basis;
    std::vector<StarRecord> stars;
    std::vector<ComponentRecord> components;
    int line{0};
};

struct MorphismBlock {
    std::string name;
    std::string target; // name of a declared algebra
    std::vector<ComponentRecord> components;
    int line{0};
};

struct AlgebraDocument {
    bool field_declared{false};
    FieldSpec field;
    std::vector<AlgebraBlock> algebras; // first block is the principal algebra
    std::vector<BimoduleBlock> bimodules;
    std::vector<MorphismBlock> morphisms;
};

/// Positioned parse failure; the CLI maps it to exit code 2.
struct ParseError : Error {
    int line;
    ParseError(int l, const std::string& what)
        : Error("line " + std::to_string(l) + ": " + what), line(l)
    {
    }
};

AlgebraDocument parse_document(const std::string& text);
AlgebraDocument parse_document_file(const std::string& path);

/// Canonical form: records sorted, coefficients normalized. emit . parse is
/// idempotent on canonical text.
std::string emit_document(const AlgebraDocument& doc);

} // namespace ainfty
