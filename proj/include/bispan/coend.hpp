#pragma once

#include "bispan/biset.hpp"
#include "bispan/linalg.hpp"

#include <random>
#include <string>
#include <vector>

namespace bispan {

// A bifunctor H : C^op x C -> Set is stored as a biset C -> C; the coend
// glues the diagonal sets H(c, c).
struct CoendResult
{
    int class_count = 0;
    std::vector<int> diagonal_offset; // start of H(c, c) in the disjoint union
    std::vector<int> label;           // diagonal element -> class
    std::vector<std::pair<int, int>> representative; // class -> (c, x), smallest element

    int class_of(int c, int x) const { return label[diagonal_offset[c] + x]; }
};

// With `verify`, also asserts that the one-step relation is already an
// equivalence relation (true over groupoids); throws std::logic_error otherwise.
CoendResult set_coend(const Biset& h, bool verify = true);

enum class Scalars
{
    rational,
    integer
};

// Linear bifunctor: free modules of the given ranks and action matrices.
struct LinearCoendProblem
{
    GroupoidPtr index;
    std::vector<int> ranks;    // [c * n + c']
    std::vector<Matrix> left;  // [alpha * n + c'] : H(tgt a, c') -> H(src a, c')
    std::vector<Matrix> right; // [alpha * n + c]  : H(c, src a) -> H(c, tgt a)

    int rank(int c, int c2) const { return ranks[static_cast<std::size_t>(c) * index->object_count() + c2]; }
    void validate() const;
};

LinearCoendProblem linearize(const Biset& h);

struct LinearCoendResult
{
    std::size_t rank = 0;
    Matrix projection; // rank x (sum of diagonal ranks)
    std::vector<std::size_t> basis_columns;
    std::vector<int> diagonal_offset;
    std::vector<Integer> invariant_factors; // integer mode: nonzero Smith invariants of the relations
};

LinearCoendResult linear_coend(const LinearCoendProblem& p, Scalars scalars = Scalars::rational);

// ---- coend calculus ----------------------------------------------------------

// Bifunctor on C1 x C2 (a biset from product(c1, c2) to itself).
struct FubiniCase
{
    GroupoidPtr c1;
    GroupoidPtr c2;
    BisetPtr h;
};

// M : C -> Set as a biset 1 -> C.
struct CoYonedaCase
{
    GroupoidPtr c;
    BisetPtr m;
};

// Both return an empty string on success, otherwise a diagnostic.
std::string check_fubini(const FubiniCase& f);
std::string check_co_yoneda(const CoYonedaCase& y);

struct CalculusReport
{
    int fubini_cases = 0;
    int fubini_passed = 0;
    int co_yoneda_cases = 0;
    int co_yoneda_passed = 0;
    std::vector<std::string> failures;
    bool ok() const { return fubini_passed == fubini_cases && co_yoneda_passed == co_yoneda_cases; }
};

CalculusReport verify_coend_calculus(const std::vector<GroupoidPtr>& pool, int cases_each, unsigned seed);

} // namespace bispan
