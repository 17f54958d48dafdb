#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rrvar/error.hpp"
#include "rrvar/value.hpp"

namespace rrvar {

// Fixed-size array of typed cells partitioned into B contiguous banks.
// Replica j of a redundant variable lands in bank (base + j) mod B, so a
// burst confined to one bank touches at most one replica of any variable
// with degree <= B.
class CellStore {
public:
    explicit CellStore(int capacity = 4096, int banks = 8)
        : capacity_(capacity), banks_(banks) {
        if (capacity < 1) throw Error("cell store capacity must be positive");
        if (banks < 1 || banks > capacity)
            throw Error("bank count must be in [1, capacity]");
        cells_.resize(static_cast<std::size_t>(capacity));
        free_by_bank_.resize(static_cast<std::size_t>(banks));
        for (int slot = 0; slot < capacity; ++slot)
            free_by_bank_[static_cast<std::size_t>(bank_of(slot))].insert(slot);
    }

    int capacity() const { return capacity_; }
    int banks() const { return banks_; }

    int bank_of(int slot) const {
        return static_cast<int>(static_cast<long>(slot) * banks_ / capacity_);
    }

    // First and one-past-last slot of a bank.
    std::pair<int, int> bank_range(int bank) const {
        auto lo = [&](int b) {
            long x = static_cast<long>(b) * capacity_;
            return static_cast<int>((x + banks_ - 1) / banks_);
        };
        return {lo(bank), lo(bank + 1)};
    }

    // Claims `degree` cells, one per bank starting at a rotating base bank.
    // Within each bank the lowest free cell is taken.
    std::vector<int> allocate(TypeCode type, int degree) {
        if (degree < 1 || degree > 9 || degree % 2 == 0)
            throw Error("invalid redundancy degree " + std::to_string(degree));
        int base = next_base_bank_;
        std::vector<int> slots;
        slots.reserve(static_cast<std::size_t>(degree));
        for (int j = 0; j < degree; ++j) {
            int bank = (base + j) % banks_;
            auto& free_set = free_by_bank_[static_cast<std::size_t>(bank)];
            if (free_set.empty()) {
                for (int taken : slots) release_one(taken);
                throw Error("out of cells in bank " + std::to_string(bank));
            }
            int slot = *free_set.begin();
            free_set.erase(free_set.begin());
            cells_[static_cast<std::size_t>(slot)] =
                Cell{type, zero_value(type)};
            slots.push_back(slot);
        }
        next_base_bank_ = (next_base_bank_ + 1) % banks_;
        return slots;
    }

    void free_slots(const std::vector<int>& slots) {
        for (int slot : slots) release_one(slot);
    }

    const Value& read(int slot) const {
        const Cell& c = cell_at(slot);
        if (!c.type) throw Error("read of unallocated cell " + std::to_string(slot));
        return c.value;
    }

    void write(int slot, const Value& v) {
        Cell& c = cell_at(slot);
        if (!c.type) throw Error("write to unallocated cell " + std::to_string(slot));
        if (type_of(v) != *c.type)
            throw Error("type mismatch writing cell " + std::to_string(slot) + ": cell is " +
                        type_name(*c.type) + ", value is " + type_name(type_of(v)));
        c.value = v;
    }

    // Fault-injection entry: bypasses the type check by corrupting in place
    // with a same-typed value. Returns false for unallocated cells.
    bool corrupt(int slot, const Value& v) {
        if (slot < 0 || slot >= capacity_) return false;
        Cell& c = cells_[static_cast<std::size_t>(slot)];
        if (!c.type || type_of(v) != *c.type) return false;
        c.value = v;
        return true;
    }

    bool allocated(int slot) const {
        return slot >= 0 && slot < capacity_ && cells_[static_cast<std::size_t>(slot)].type.has_value();
    }

    std::optional<TypeCode> slot_type(int slot) const {
        if (slot < 0 || slot >= capacity_) return std::nullopt;
        return cells_[static_cast<std::size_t>(slot)].type;
    }

    int free_count() const {
        int n = 0;
        for (const auto& s : free_by_bank_) n += static_cast<int>(s.size());
        return n;
    }

private:
    struct Cell {
        std::optional<TypeCode> type;
        Value value;
    };

    int capacity_;
    int banks_;
    std::vector<Cell> cells_;
    std::vector<std::set<int>> free_by_bank_;
    int next_base_bank_ = 0;

    Cell& cell_at(int slot) {
        if (slot < 0 || slot >= capacity_)
            throw Error("cell index " + std::to_string(slot) + " out of range");
        return cells_[static_cast<std::size_t>(slot)];
    }
    const Cell& cell_at(int slot) const {
        return const_cast<CellStore*>(this)->cell_at(slot);
    }

    void release_one(int slot) {
        Cell& c = cell_at(slot);
        c.type.reset();
        c.value = Value(std::int64_t{0});
        free_by_bank_[static_cast<std::size_t>(bank_of(slot))].insert(slot);
    }
};

}  // namespace rrvar
