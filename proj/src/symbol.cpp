#include "chaselab/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace chaselab {
namespace {

class SymbolTable {
public:
    SymbolTable() { texts_.emplace_back(); ids_.emplace(texts_.back(), 0); }

    std::uint32_t intern(std::string_view text) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = ids_.find(text); it != ids_.end()) return it->second;
        }
        std::unique_lock lock(mutex_);
        if (auto it = ids_.find(text); it != ids_.end()) return it->second;
        texts_.emplace_back(text);
        auto id = static_cast<std::uint32_t>(texts_.size() - 1);
        ids_.emplace(texts_.back(), id);
        return id;
    }

    std::string_view text(std::uint32_t id) const {
        std::shared_lock lock(mutex_);
        return texts_[id];
    }

private:
    mutable std::shared_mutex mutex_;
    std::deque<std::string> texts_;  // stable addresses for the views below
    std::unordered_map<std::string_view, std::uint32_t> ids_;
};

SymbolTable& table() {
    static SymbolTable instance;
    return instance;
}

} // namespace

Symbol::Symbol(std::string_view text) : id_(table().intern(text)) {}

std::string_view Symbol::str() const { return table().text(id_); }

bool operator<(Symbol a, Symbol b) {
    if (a.id_ == b.id_) return false;
    return a.str() < b.str();
}

} // namespace chaselab
