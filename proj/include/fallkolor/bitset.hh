#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fallkolor {

/// Fixed-size set of vertex indices, stored as 64-bit words. The word count
/// is the size rounded up to a multiple of 64; bits past size() stay zero.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    static constexpr std::size_t word_bits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t size) : _size(size), _words((size + word_bits - 1) / word_bits, 0) {}

    static auto full(std::size_t size) -> Bitset
    {
        Bitset b(size);
        for (auto & w : b._words)
            w = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    auto size() const -> std::size_t { return _size; }
    auto words() const -> std::span<const std::uint64_t> { return _words; }

    auto test(std::size_t i) const -> bool { return (_words[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i) { _words[i / word_bits] |= std::uint64_t{1} << (i % word_bits); }
    void reset(std::size_t i) { _words[i / word_bits] &= ~(std::uint64_t{1} << (i % word_bits)); }

    auto count() const -> std::size_t
    {
        std::size_t c = 0;
        for (auto w : _words)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    auto any() const -> bool
    {
        for (auto w : _words)
            if (w)
                return true;
        return false;
    }
    auto none() const -> bool { return ! any(); }

    auto intersects(const Bitset & o) const -> bool
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i] & o._words[i])
                return true;
        return false;
    }

    auto is_subset_of(const Bitset & o) const -> bool
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            if (_words[i] & ~o._words[i])
                return false;
        return true;
    }

    /// Lowest member at or after `from`, or npos.
    auto find_next(std::size_t from) const -> std::size_t
    {
        if (from >= _size)
            return npos;
        std::size_t wi = from / word_bits;
        std::uint64_t w = _words[wi] & (~std::uint64_t{0} << (from % word_bits));
        while (true) {
            if (w)
                return wi * word_bits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == _words.size())
                return npos;
            w = _words[wi];
        }
    }
    auto find_first() const -> std::size_t { return find_next(0); }

    /// Lowest index below size() that is not a member, or npos.
    auto find_first_zero() const -> std::size_t
    {
        for (std::size_t wi = 0; wi < _words.size(); ++wi)
            if (~_words[wi]) {
                auto i = wi * word_bits + static_cast<std::size_t>(std::countr_zero(~_words[wi]));
                return i < _size ? i : npos;
            }
        return npos;
    }

    auto operator&=(const Bitset & o) -> Bitset &
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] &= o._words[i];
        return *this;
    }
    auto operator|=(const Bitset & o) -> Bitset &
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] |= o._words[i];
        return *this;
    }
    /// Removes every member of `o`.
    auto subtract(const Bitset & o) -> Bitset &
    {
        for (std::size_t i = 0; i < _words.size(); ++i)
            _words[i] &= ~o._words[i];
        return *this;
    }

    friend auto operator&(Bitset a, const Bitset & b) -> Bitset { return a &= b; }
    friend auto operator|(Bitset a, const Bitset & b) -> Bitset { return a |= b; }

    auto members() const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> out;
        for (auto i = find_first(); i != npos; i = find_next(i + 1))
            out.push_back(i);
        return out;
    }

    template <typename F>
    void for_each(F && f) const
    {
        for (std::size_t wi = 0; wi < _words.size(); ++wi) {
            auto w = _words[wi];
            while (w) {
                f(wi * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

    /// Lexicographic order of the ascending member lists.
    friend auto lex_less(const Bitset & a, const Bitset & b) -> bool
    {
        for (std::size_t wi = 0; wi < a._words.size(); ++wi) {
            auto diff = a._words[wi] ^ b._words[wi];
            if (! diff)
                continue;
            auto bit = wi * word_bits + static_cast<std::size_t>(std::countr_zero(diff));
            // The set holding the first differing element is smaller unless the
            // other one has run out of elements.
            const Bitset & holder = a.test(bit) ? a : b;
            const Bitset & other = a.test(bit) ? b : a;
            bool other_continues = other.find_next(bit) != npos;
            bool holder_is_a = &holder == &a;
            return other_continues ? holder_is_a : ! holder_is_a;
        }
        return false;
    }

private:
    void trim()
    {
        if (_size % word_bits && ! _words.empty())
            _words.back() &= (std::uint64_t{1} << (_size % word_bits)) - 1;
    }

    std::size_t _size = 0;
    std::vector<std::uint64_t> _words;
};

}
