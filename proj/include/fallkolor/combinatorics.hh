#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fallkolor {

/// Binomial coefficient C(n, k); 0 when k > n. Throws OverflowError rather
/// than wrapping.
auto binomial(std::uint64_t n, std::uint64_t k) -> std::uint64_t;

/// Checked 64-bit helpers shared by the formula code.
auto checked_add(std::uint64_t a, std::uint64_t b) -> std::uint64_t;
auto checked_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t;
auto ceil_div(std::uint64_t a, std::uint64_t b) -> std::uint64_t;

/// A sorted m-subset of [n] = {1, ..., n}; the identity of a Kneser vertex.
class SubsetLabel {
public:
    /// Throws ParameterError unless `elements` is strictly increasing inside 1..n.
    SubsetLabel(std::uint32_t n, std::vector<std::uint32_t> elements);

    auto n() const -> std::uint32_t { return _n; }
    auto size() const -> std::size_t { return _elements.size(); }
    auto elements() const -> const std::vector<std::uint32_t> & { return _elements; }
    auto contains(std::uint32_t x) const -> bool;
    auto max() const -> std::uint32_t { return _elements.back(); }
    auto disjoint_from(const SubsetLabel & o) const -> bool;

    /// "{a,b,c}"
    auto to_string() const -> std::string;
    /// Parses "{a,b,c}"; elements may appear in any order but must be distinct.
    static auto parse(const std::string & text, std::uint32_t n) -> SubsetLabel;

    friend auto operator==(const SubsetLabel & a, const SubsetLabel & b) -> bool = default;

private:
    std::uint32_t _n;
    std::vector<std::uint32_t> _elements;
};

/// 0-based colexicographic index of `s` among all |s|-subsets of [n].
auto colex_rank(const SubsetLabel & s) -> std::uint64_t;
/// Inverse of colex_rank. Throws ParameterError when rank >= C(n, m).
auto colex_unrank(std::uint64_t rank, std::uint32_t n, std::uint32_t m) -> SubsetLabel;

/// A t-(v, k, lambda) design candidate over the point set [v].
struct BlockDesign {
    std::uint32_t t = 0;
    std::uint32_t v = 0;
    std::uint32_t k = 0;
    std::uint32_t lambda = 0;
    std::vector<SubsetLabel> blocks;

    /// Checks v >= k >= t >= 1, lambda >= 1 and every block being a k-subset of [v].
    void validate_structure() const;
};

struct DesignReport {
    bool pass = false;
    /// On failure: one t-subset whose coverage differs from lambda.
    std::optional<SubsetLabel> witness;
    std::uint64_t witness_count = 0;
};

inline constexpr std::uint64_t default_design_budget = 10'000'000;

/// Checks that every t-subset of [v] lies in exactly lambda blocks. Throws
/// BudgetError when C(v, t) exceeds `budget`.
auto verify_design(const BlockDesign & d, std::uint64_t budget = default_design_budget) -> DesignReport;

/// Verified Steiner triple system 2-(v,3,1): Bose construction for v = 3 mod 6,
/// Skolem construction for v = 1 mod 6. Throws ParameterError otherwise.
auto construct_sts(std::uint32_t v) -> BlockDesign;

/// Text format: header "t v k lambda b", then b lines of k integers.
auto read_design(std::istream & in) -> BlockDesign;
void write_design(std::ostream & out, const BlockDesign & d);

}
