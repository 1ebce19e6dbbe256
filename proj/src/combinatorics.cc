#include <fallkolor/combinatorics.hh>
#include <fallkolor/error.hh>

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <istream>
#include <ostream>
#include <sstream>

using std::string;
using std::uint32_t;
using std::uint64_t;
using std::vector;

namespace fallkolor {

auto checked_add(uint64_t a, uint64_t b) -> uint64_t
{
    uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

auto checked_mul(uint64_t a, uint64_t b) -> uint64_t
{
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

auto ceil_div(uint64_t a, uint64_t b) -> uint64_t
{
    if (b == 0)
        throw ParameterError("division by zero");
    return a / b + (a % b != 0);
}

auto binomial(uint64_t n, uint64_t k) -> uint64_t
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    uint64_t result = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) / i is exact at every step; divide out the gcd
        // first so the intermediate product only overflows when the answer does.
        uint64_t num = n - k + i, den = i;
        uint64_t g = std::gcd(result, den);
        result /= g;
        den /= g;
        num /= den;
        result = checked_mul(result, num);
    }
    return result;
}

SubsetLabel::SubsetLabel(uint32_t n, vector<uint32_t> elements) : _n(n), _elements(std::move(elements))
{
    for (std::size_t i = 0; i < _elements.size(); ++i) {
        if (_elements[i] < 1 || _elements[i] > n)
            throw ParameterError("subset element " + std::to_string(_elements[i]) + " outside 1.." + std::to_string(n));
        if (i > 0 && _elements[i - 1] >= _elements[i])
            throw ParameterError("subset elements must be strictly increasing");
    }
}

auto SubsetLabel::contains(uint32_t x) const -> bool
{
    return std::binary_search(_elements.begin(), _elements.end(), x);
}

auto SubsetLabel::disjoint_from(const SubsetLabel & o) const -> bool
{
    auto a = _elements.begin(), b = o._elements.begin();
    while (a != _elements.end() && b != o._elements.end()) {
        if (*a == *b)
            return false;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return true;
}

auto SubsetLabel::to_string() const -> string
{
    string s = "{";
    for (std::size_t i = 0; i < _elements.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(_elements[i]);
    }
    return s + "}";
}

auto SubsetLabel::parse(const string & text, uint32_t n) -> SubsetLabel
{
    auto open = text.find('{'), close = text.rfind('}');
    if (open == string::npos || close == string::npos || close < open)
        throw FormatError("malformed subset label '" + text + "'");
    for (std::size_t i = 0; i < open; ++i)
        if (! std::isspace(static_cast<unsigned char>(text[i])))
            throw FormatError("malformed subset label '" + text + "'");
    for (std::size_t i = close + 1; i < text.size(); ++i)
        if (! std::isspace(static_cast<unsigned char>(text[i])))
            throw FormatError("malformed subset label '" + text + "'");

    vector<uint32_t> elements;
    string body = text.substr(open + 1, close - open - 1);
    std::stringstream ss(body);
    string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(item, &pos);
        }
        catch (const std::exception &) {
            throw FormatError("malformed subset label '" + text + "'");
        }
        for (; pos < item.size(); ++pos)
            if (! std::isspace(static_cast<unsigned char>(item[pos])))
                throw FormatError("malformed subset label '" + text + "'");
        elements.push_back(static_cast<uint32_t>(value));
    }
    std::sort(elements.begin(), elements.end());
    if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
        throw FormatError("repeated element in subset label '" + text + "'");
    try {
        return SubsetLabel(n, std::move(elements));
    }
    catch (const ParameterError & e) {
        throw FormatError(e.what());
    }
}

auto colex_rank(const SubsetLabel & s) -> uint64_t
{
    uint64_t rank = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        rank = checked_add(rank, binomial(s.elements()[i] - 1, i + 1));
    return rank;
}

auto colex_unrank(uint64_t rank, uint32_t n, uint32_t m) -> SubsetLabel
{
    if (m > n)
        throw ParameterError("subset size exceeds ground set");
    if (rank >= binomial(n, m))
        throw ParameterError("rank " + std::to_string(rank) + " out of range for C(" + std::to_string(n) + "," +
            std::to_string(m) + ")");
    vector<uint32_t> elements(m);
    uint32_t top = n;
    for (uint32_t i = m; i >= 1; --i) {
        // largest c < top with C(c, i) <= rank
        uint32_t c = top - 1;
        while (binomial(c, i) > rank)
            --c;
        elements[i - 1] = c + 1;
        rank -= binomial(c, i);
        top = c;
    }
    return SubsetLabel(n, std::move(elements));
}

void BlockDesign::validate_structure() const
{
    if (! (t >= 1 && k >= t && v >= k))
        throw ParameterError("design parameters must satisfy v >= k >= t >= 1");
    if (lambda < 1)
        throw ParameterError("design lambda must be at least 1");
    for (const auto & b : blocks) {
        if (b.n() != v || b.size() != k)
            throw ParameterError("block " + b.to_string() + " is not a " + std::to_string(k) + "-subset of [" +
                std::to_string(v) + "]");
    }
}

namespace {
    // Calls f on every t-subset (as 0-based positions) of `items`.
    template <typename F>
    void for_each_subset(const vector<uint32_t> & items, uint32_t t, F && f)
    {
        vector<uint32_t> idx(t);
        for (uint32_t i = 0; i < t; ++i)
            idx[i] = i;
        vector<uint32_t> chosen(t);
        while (true) {
            for (uint32_t i = 0; i < t; ++i)
                chosen[i] = items[idx[i]];
            f(chosen);
            int i = static_cast<int>(t) - 1;
            while (i >= 0 && idx[i] == items.size() - t + i)
                --i;
            if (i < 0)
                return;
            ++idx[i];
            for (uint32_t j = i + 1; j < t; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
}

auto verify_design(const BlockDesign & d, uint64_t budget) -> DesignReport
{
    d.validate_structure();
    uint64_t total = binomial(d.v, d.t);
    if (total > budget)
        throw BudgetError("design too large to verify: C(" + std::to_string(d.v) + "," + std::to_string(d.t) +
            ") = " + std::to_string(total) + " exceeds budget " + std::to_string(budget));

    vector<uint64_t> coverage(total, 0);
    for (const auto & block : d.blocks)
        for_each_subset(block.elements(), d.t, [&](const vector<uint32_t> & sub) {
            ++coverage[colex_rank(SubsetLabel(d.v, sub))];
        });

    DesignReport report;
    for (uint64_t r = 0; r < total; ++r)
        if (coverage[r] != d.lambda) {
            report.witness = colex_unrank(r, d.v, d.t);
            report.witness_count = coverage[r];
            return report;
        }
    report.pass = true;
    return report;
}

namespace {
    using Triple = std::array<uint32_t, 3>;

    // Points of Q x Z_3 are numbered x + q*i, plus an optional infinity point
    // numbered 3q.
    auto bose(uint32_t order) -> vector<Triple>
    {
        vector<Triple> out;
        auto pt = [&](uint32_t x, uint32_t i) { return x + order * (i % 3); };
        // idempotent commutative quasigroup of odd order: x o y = (x + y)/2 mod order
        uint32_t half = (order + 1) / 2;
        auto op = [&](uint32_t x, uint32_t y) { return static_cast<uint32_t>((uint64_t{x + y} * half) % order); };
        for (uint32_t x = 0; x < order; ++x)
            out.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
        for (uint32_t x = 0; x < order; ++x)
            for (uint32_t y = x + 1; y < order; ++y)
                for (uint32_t i = 0; i < 3; ++i)
                    out.push_back({pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
        return out;
    }

    auto skolem(uint32_t half_order) -> vector<Triple>
    {
        uint32_t order = 2 * half_order;
        vector<Triple> out;
        auto pt = [&](uint32_t x, uint32_t i) { return x + order * (i % 3); };
        uint32_t infinity = 3 * order;
        // half-idempotent commutative quasigroup: relabelled addition table of Z_order
        auto op = [&](uint32_t x, uint32_t y) {
            uint32_t e = (x + y) % order;
            return e % 2 == 0 ? e / 2 : (e - 1) / 2 + half_order;
        };
        for (uint32_t x = 0; x < half_order; ++x)
            out.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
        for (uint32_t x = 0; x < half_order; ++x)
            for (uint32_t i = 0; i < 3; ++i)
                out.push_back({infinity, pt(x + half_order, i), pt(x, i + 1)});
        for (uint32_t x = 0; x < order; ++x)
            for (uint32_t y = x + 1; y < order; ++y)
                for (uint32_t i = 0; i < 3; ++i)
                    out.push_back({pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
        return out;
    }
}

auto construct_sts(uint32_t v) -> BlockDesign
{
    if (v < 3)
        throw ParameterError("STS order must be at least 3");
    if (v % 6 != 1 && v % 6 != 3)
        throw ParameterError("no STS exists for v = " + std::to_string(v) + " (requires v = 1 or 3 mod 6)");

    auto triples = v % 6 == 3 ? bose(v / 3) : skolem((v - 1) / 6);

    BlockDesign d{2, v, 3, 1, {}};
    d.blocks.reserve(triples.size());
    for (auto tr : triples) {
        std::sort(tr.begin(), tr.end());
        d.blocks.emplace_back(v, vector<uint32_t>{tr[0] + 1, tr[1] + 1, tr[2] + 1});
    }
    std::sort(d.blocks.begin(), d.blocks.end(),
        [](const SubsetLabel & a, const SubsetLabel & b) { return a.elements() < b.elements(); });

    auto report = verify_design(d);
    if (! report.pass || d.blocks.size() != uint64_t{v} * (v - 1) / 6)
        throw ConstructionError("STS(" + std::to_string(v) + ") construction produced an invalid design; pair " +
            (report.witness ? report.witness->to_string() : string("?")) + " covered " +
            std::to_string(report.witness_count) + " times");
    return d;
}

auto read_design(std::istream & in) -> BlockDesign
{
    auto next_line = [&](string & line) {
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first != string::npos)
                return true;
        }
        return false;
    };

    string line;
    if (! next_line(line))
        throw FormatError("design file is empty");
    std::istringstream header(line);
    long long t, v, k, lambda, b;
    if (! (header >> t >> v >> k >> lambda >> b) || t < 1 || v < 1 || k < 1 || lambda < 1 || b < 0)
        throw FormatError("design header must be 't v k lambda b' with positive integers");
    string rest;
    if (header >> rest)
        throw FormatError("trailing text in design header");

    BlockDesign d;
    d.t = static_cast<uint32_t>(t);
    d.v = static_cast<uint32_t>(v);
    d.k = static_cast<uint32_t>(k);
    d.lambda = static_cast<uint32_t>(lambda);
    for (long long i = 0; i < b; ++i) {
        if (! next_line(line))
            throw FormatError("design file declares " + std::to_string(b) + " blocks but has " + std::to_string(i));
        std::istringstream row(line);
        vector<uint32_t> elems;
        long long x;
        while (row >> x) {
            if (x < 1 || x > v)
                throw FormatError("block element " + std::to_string(x) + " outside 1.." + std::to_string(v));
            elems.push_back(static_cast<uint32_t>(x));
        }
        if (! row.eof())
            throw FormatError("non-integer token in block line " + std::to_string(i + 1));
        if (elems.size() != d.k)
            throw FormatError("block line " + std::to_string(i + 1) + " has " + std::to_string(elems.size()) +
                " entries, expected " + std::to_string(d.k));
        std::sort(elems.begin(), elems.end());
        if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
            throw FormatError("repeated element in block line " + std::to_string(i + 1));
        d.blocks.emplace_back(d.v, std::move(elems));
    }
    if (next_line(line))
        throw FormatError("design file has more than the declared " + std::to_string(b) + " blocks");
    d.validate_structure();
    return d;
}

void write_design(std::ostream & out, const BlockDesign & d)
{
    out << d.t << ' ' << d.v << ' ' << d.k << ' ' << d.lambda << ' ' << d.blocks.size() << '\n';
    for (const auto & block : d.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i)
            out << (i ? " " : "") << block.elements()[i];
        out << '\n';
    }
}

}
