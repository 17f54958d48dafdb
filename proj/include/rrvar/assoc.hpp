#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rrvar/error.hpp"

namespace rrvar {

// strcmp-style ordering: negative, zero, positive.
using KeyComparator = std::function<int(const std::string&, const std::string&)>;

inline int compare_lexical(const std::string& a, const std::string& b) {
    return a.compare(b);
}

// Associative array keyed by an arbitrary comparator's ordering.
// Enumeration follows the comparator, not insertion order.
template <typename V>
class AssocArray {
public:
    explicit AssocArray(KeyComparator cmp = compare_lexical)
        : map_(Less{std::move(cmp)}) {}

    void awrite(const std::string& key, V value) { map_[key] = std::move(value); }

    const V& aread(const std::string& key) const {
        auto it = map_.find(key);
        if (it == map_.end()) throw Error("lookup miss for key '" + key + "'");
        return it->second;
    }

    V& aread(const std::string& key) {
        auto it = map_.find(key);
        if (it == map_.end()) throw Error("lookup miss for key '" + key + "'");
        return it->second;
    }

    bool contains(const std::string& key) const { return map_.count(key) != 0; }
    std::size_t size() const { return map_.size(); }

    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        out.reserve(map_.size());
        for (const auto& [k, v] : map_) out.push_back(k);
        return out;
    }

private:
    struct Less {
        KeyComparator cmp;
        bool operator()(const std::string& a, const std::string& b) const {
            return cmp(a, b) < 0;
        }
    };
    std::map<std::string, V, Less> map_;
};

}  // namespace rrvar
