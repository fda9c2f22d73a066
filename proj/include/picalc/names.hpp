#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace picalc {

/// A name of the three-sorted universe shared by both calculi.
///
/// Public names are user identifiers, spare names are `s1, s2, ...` and
/// private names are written `{tags}p` followed by primes, where the tags
/// are a word over `e`, `l`, `r`.  Public and spare names together form the
/// observable names: only they can carry barbs.
class Name {
public:
    enum class Sort : unsigned char { Public, Spare, Private };

    Name() = default;

    static Name pub(std::string id);
    static Name spare(int index);
    static Name priv(std::string tags = {}, int primes = 0);

    Sort sort() const { return sort_; }
    bool is_plain() const { return sort_ == Sort::Public; }
    bool is_observable() const { return sort_ != Sort::Private; }
    bool is_private() const { return sort_ == Sort::Private; }

    /// Identifier of a public name, tag word of a private name.
    const std::string& text() const { return text_; }
    /// Index of a spare name, number of primes of a private name.
    int number() const { return number_; }

    std::string str() const;

    // Sort first, then lexicographic within the sort.
    auto operator<=>(const Name&) const = default;
    bool operator==(const Name&) const = default;

private:
    Name(Sort sort, std::string text, int number)
        : sort_(sort), text_(std::move(text)), number_(number) {}

    Sort sort_ = Sort::Public;
    std::string text_;
    int number_ = 0;
};

using NameSet = std::set<Name>;

/// True if `id` would lex as a spare name (`s` followed by digits).
bool looks_like_spare(const std::string& id);

/// Least name of the reserved fresh family `_0, _1, ...` not in `avoid`.
Name fresh_name(const NameSet& avoid);

/// The k-th name of the reserved fresh family.
Name reserved_name(std::size_t k);

struct NameHash {
    std::size_t operator()(const Name& n) const noexcept {
        std::size_t h = std::hash<std::string>{}(n.text());
        h ^= std::hash<int>{}(n.number()) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h ^ static_cast<std::size_t>(n.sort());
    }
};

std::ostream& operator<<(std::ostream& os, const Name& n);

} // namespace picalc
