#include <fallkolor/bounds.hh>
#include <fallkolor/combinatorics.hh>
#include <fallkolor/error.hh>

using std::string;
using std::uint32_t;
using std::uint64_t;

namespace fallkolor {

namespace {
    auto params(uint32_t n, uint32_t m) -> string
    {
        return "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }

    auto kneser_pair_spectrum(uint32_t n) -> std::optional<uint64_t>
    {
        if (n == 2 || n == 3)
            return 1;
        if (n == 4)
            return 2;
        switch (n % 6) {
        case 1:
        case 3:
            return checked_mul(n, n - 1) / 6;
        case 2:
        case 4:
            return checked_mul(n - 1, n - 2) / 6 + 1;
        default:
            return std::nullopt;
        }
    }
}

auto closed_form_spectrum(uint32_t n, uint32_t m) -> SpectrumFormula
{
    if (n < 1 || m < 1 || m > n)
        throw ParameterError("closed form needs n >= 1 and 1 <= m <= n, got " + params(n, m));

    SpectrumFormula f;
    f.n = n;
    f.m = m;
    auto exact = [&](std::vector<uint64_t> values) {
        f.kind = SpectrumKind::exact_set;
        f.exact = std::move(values);
    };

    if (m == 1)
        exact({n});
    else if (2 * m > n)
        exact({1});
    else if (2 * m == n)
        exact({2});
    else if (m == 2) {
        if (auto k = kneser_pair_spectrum(n))
            exact({*k});
        else
            f.kind = SpectrumKind::empty;
    }
    else
        f.kind = SpectrumKind::unknown;

    if (m >= 2 && n >= 2 * m) {
        // the two bounds cross for m = 2 and n >= 14; an empty interval would
        // claim Fall = {} against the exact value above, so it is left out
        auto b = fall_bounds(n, m);
        if (b.lower <= b.upper) {
            f.lower = b.lower;
            f.upper = b.upper;
        }
    }
    return f;
}

auto SpectrumFormula::describe() const -> string
{
    string s;
    if (lower && upper)
        s = "lower " + std::to_string(*lower) + ", upper " + std::to_string(*upper) + ", ";
    switch (kind) {
    case SpectrumKind::exact_set: {
        s += "exact {";
        for (std::size_t i = 0; i < exact->size(); ++i)
            s += (i ? "," : "") + std::to_string((*exact)[i]);
        return s + "}";
    }
    case SpectrumKind::empty:
        return s + "exact {}";
    case SpectrumKind::bounds_only:
        return s + "bounds only";
    case SpectrumKind::unknown:
        return s + "unknown";
    }
    return s;
}

auto hilton_milner(uint32_t n, uint32_t m) -> uint64_t
{
    if (m < 1 || n < 2 * m)
        throw ParameterError("Hilton-Milner quantity needs n >= 2m >= 2, got " + params(n, m));
    return checked_add(1, binomial(n - 1, m - 1)) - binomial(n - m - 1, m - 1);
}

auto fall_bounds(uint32_t n, uint32_t m) -> FallBounds
{
    if (m < 1 || n < 2 * m)
        throw ParameterError("fall bounds need n >= 2m, got " + params(n, m));
    auto h = hilton_milner(n, m);
    return {ceil_div(binomial(n - 1, m), h) + 1, binomial(n, m) - binomial(n - m, m)};
}

}
