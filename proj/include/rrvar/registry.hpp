#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrvar/assoc.hpp"
#include "rrvar/cell_store.hpp"
#include "rrvar/translator.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

// Runtime identity of an RR variable. Non-redundant variables hold one
// slot; redundant ones hold `degree` slots in distinct banks.
struct VarDescriptor {
    std::string name;
    TypeCode type = TypeCode::int_t;
    KindSet kinds;
    std::vector<int> slots;
    std::optional<std::string> device;

    int degree() const { return static_cast<int>(slots.size()); }
};

// The associative arrays "reflex" (name -> descriptor) and "rtype"
// (name -> type code). Both are written only during prologue execution;
// after registration completes their key sets are identical.
class Registry {
public:
    void aopen(const std::string& name, KeyComparator cmp = compare_lexical) {
        if (name == "reflex") {
            if (reflex_) throw Error("associative array 'reflex' opened twice");
            reflex_.emplace(std::move(cmp));
        } else if (name == "rtype") {
            if (rtype_) throw Error("associative array 'rtype' opened twice");
            rtype_.emplace(std::move(cmp));
        } else {
            throw Error("unknown associative array '" + name + "'");
        }
    }

    bool is_open(const std::string& name) const {
        if (name == "reflex") return reflex_.has_value();
        if (name == "rtype") return rtype_.has_value();
        return false;
    }

    AssocArray<VarDescriptor>& reflex() {
        if (!reflex_) throw Error("associative array 'reflex' not opened");
        return *reflex_;
    }
    const AssocArray<VarDescriptor>& reflex() const {
        return const_cast<Registry*>(this)->reflex();
    }

    AssocArray<TypeCode>& rtype() {
        if (!rtype_) throw Error("associative array 'rtype' not opened");
        return *rtype_;
    }
    const AssocArray<TypeCode>& rtype() const {
        return const_cast<Registry*>(this)->rtype();
    }

    // Declaration-order registration; the assoc arrays themselves enumerate
    // in comparator order, so allocation order is tracked separately.
    void register_name(const std::string& name) {
        for (const auto& n : order_)
            if (n == name) return;
        order_.push_back(name);
    }

    const std::vector<std::string>& registration_order() const { return order_; }

    bool registered(const std::string& name) const {
        return reflex_ && reflex_->contains(name);
    }

private:
    std::optional<AssocArray<VarDescriptor>> reflex_;
    std::optional<AssocArray<TypeCode>> rtype_;
    std::vector<std::string> order_;
};

// Claims storage for a variable and records it in reflex. Degree must be
// odd; redundant variables use degree in [3, 9], plain ones degree 1.
inline VarDescriptor& allocate_variable(Registry& registry, CellStore& store,
                                        const std::string& name, TypeCode type,
                                        KindSet kinds, int degree,
                                        std::optional<std::string> device = {}) {
    if (kinds.redundant) {
        if (degree < 3) throw Error("redundant variable needs degree >= 3");
    } else if (degree != 1) {
        throw Error("non-redundant variable must have degree 1");
    }
    VarDescriptor desc;
    desc.name = name;
    desc.type = type;
    desc.kinds = kinds;
    desc.device = std::move(device);
    desc.slots = store.allocate(type, degree);
    registry.reflex().awrite(name, std::move(desc));
    registry.rtype().awrite(name, type);
    registry.register_name(name);
    return registry.reflex().aread(name);
}

}  // namespace rrvar
