#pragma once

#include "toolkit/exact/rational.hpp"
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

namespace toolkit::search {

// Bounded brute-force search over byte strings, in length-then-lexicographic
// order.  The decoder must be total: strings that do not encode a candidate
// return nullopt.
template <class T>
struct SearchSpace {
    std::function<std::optional<T>(std::span<const unsigned char>)> decoder;
    std::function<bool(const T&)> predicate;
    unsigned max_length = 0; // H
    unsigned alphabet = 256; // alphabet size; full byte range by default
};

// Total number of strings of length exactly len over the alphabet.
inline uint64_t strings_of_length(unsigned alphabet, unsigned len) {
    uint64_t n = 1;
    for (unsigned i = 0; i < len; ++i) n *= alphabet;
    return n;
}

// Decode the idx-th string of a given length (lexicographic, base = alphabet).
inline void string_at(uint64_t idx, unsigned len, unsigned alphabet, unsigned char* out) {
    for (unsigned i = len; i-- > 0;) {
        out[i] = (unsigned char)(idx % alphabet);
        idx /= alphabet;
    }
}

namespace detail {
template <class T>
std::vector<T> enumerate_range(const SearchSpace<T>& space, unsigned len, uint64_t lo, uint64_t hi) {
    std::vector<T> found;
    std::vector<unsigned char> buf(len);
    for (uint64_t idx = lo; idx < hi; ++idx) {
        string_at(idx, len, space.alphabet, buf.data());
        std::optional<T> cand = space.decoder(std::span<const unsigned char>(buf.data(), len));
        if (cand && space.predicate(*cand)) found.push_back(std::move(*cand));
    }
    return found;
}
} // namespace detail

template <class T>
std::vector<T> enumerate_bounded_serial(const SearchSpace<T>& space) {
    std::vector<T> all;
    for (unsigned len = 0; len <= space.max_length; ++len) {
        uint64_t total = strings_of_length(space.alphabet, len);
        auto part = detail::enumerate_range(space, len, 0, total);
        for (auto& x : part) all.push_back(std::move(x));
    }
    return all;
}

// OpenMP variant: predicate evaluation on disjoint index blocks, results
// merged back in string order.
template <class T>
std::vector<T> enumerate_bounded_omp(const SearchSpace<T>& space) {
    std::vector<T> all;
    for (unsigned len = 0; len <= space.max_length; ++len) {
        uint64_t total = strings_of_length(space.alphabet, len);
        const uint64_t chunk = 1 << 14;
        uint64_t nchunks = (total + chunk - 1) / chunk;
        if (nchunks <= 1) {
            auto part = detail::enumerate_range(space, len, 0, total);
            for (auto& x : part) all.push_back(std::move(x));
            continue;
        }
        std::vector<std::vector<T>> buckets(nchunks);
#pragma omp parallel for schedule(dynamic)
        for (long long c = 0; c < (long long)nchunks; ++c) {
            uint64_t lo = (uint64_t)c * chunk;
            uint64_t hi = std::min(total, lo + chunk);
            buckets[(size_t)c] = detail::enumerate_range(space, len, lo, hi);
        }
        for (auto& b : buckets)
            for (auto& x : b) all.push_back(std::move(x));
    }
    return all;
}

template <class T>
std::vector<T> enumerate_bounded(const SearchSpace<T>& space) {
    return enumerate_bounded_omp(space);
}

// Demo codec (zigzag big-endian, length 1..8): used by the CLI search demo
// and as the spec'd small-integer decoder in tests.
std::optional<long> small_integer_decode(std::span<const unsigned char> s);

} // namespace toolkit::search
