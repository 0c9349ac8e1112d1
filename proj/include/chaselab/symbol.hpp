#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace chaselab {

// Interned identifier. Equality and hashing are by id; ordering is by text.
class Symbol {
public:
    Symbol() = default;
    explicit Symbol(std::string_view text);

    std::string_view str() const;
    std::uint32_t id() const { return id_; }
    bool empty() const { return id_ == 0; }

    friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
    friend bool operator<(Symbol a, Symbol b);

private:
    std::uint32_t id_ = 0;
};

} // namespace chaselab

template <>
struct std::hash<chaselab::Symbol> {
    std::size_t operator()(chaselab::Symbol s) const noexcept { return s.id(); }
};
