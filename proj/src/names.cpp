#include "picalc/names.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace picalc {

Name Name::pub(std::string id) {
    if (id.empty())
        throw std::invalid_argument("empty public name");
    return Name(Sort::Public, std::move(id), 0);
}

Name Name::spare(int index) {
    if (index < 1)
        throw std::invalid_argument("spare names are indexed from 1");
    return Name(Sort::Spare, {}, index);
}

Name Name::priv(std::string tags, int primes) {
    for (char c : tags)
        if (c != 'e' && c != 'l' && c != 'r')
            throw std::invalid_argument("private tag outside {e,l,r}: " + tags);
    if (primes < 0)
        throw std::invalid_argument("negative prime count");
    return Name(Sort::Private, std::move(tags), primes);
}

std::string Name::str() const {
    switch (sort_) {
    case Sort::Public:
        return text_;
    case Sort::Spare:
        return "s" + std::to_string(number_);
    case Sort::Private:
        return "{" + text_ + "}p" + std::string(static_cast<std::size_t>(number_), '\'');
    }
    return {};
}

bool looks_like_spare(const std::string& id) {
    if (id.size() < 2 || id[0] != 's')
        return false;
    for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i])))
            return false;
    return true;
}

Name reserved_name(std::size_t k) { return Name::pub("_" + std::to_string(k)); }

Name fresh_name(const NameSet& avoid) {
    for (std::size_t k = 0;; ++k) {
        Name n = reserved_name(k);
        if (!avoid.contains(n))
            return n;
    }
}

std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.str(); }

} // namespace picalc
