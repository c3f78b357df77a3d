#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>

#include "raduls/layout.hpp"

namespace raduls::detail {

// Calls f with the record and key widths lifted to compile time. Every
// supported layout maps to one instantiation.
template <typename F>
decltype(auto) dispatch_layout(const RecordLayout& l, F&& f) {
    using R8 = std::integral_constant<size_t, 8>;
    using R16 = std::integral_constant<size_t, 16>;
    using R24 = std::integral_constant<size_t, 24>;
    using R32 = std::integral_constant<size_t, 32>;
    using K8 = std::integral_constant<size_t, 8>;
    using K16 = std::integral_constant<size_t, 16>;

    if (l.valid()) {
        switch (l.record_size) {
            case 8:
                return f(R8{}, K8{});
            case 16:
                if (l.key_size == 8) return f(R16{}, K8{});
                return f(R16{}, K16{});
            case 24:
                if (l.key_size == 8) return f(R24{}, K8{});
                return f(R24{}, K16{});
            case 32:
                if (l.key_size == 8) return f(R32{}, K8{});
                return f(R32{}, K16{});
        }
    }
    throw std::invalid_argument("unsupported record layout: record_size=" +
                                std::to_string(l.record_size) +
                                " key_size=" + std::to_string(l.key_size));
}

}  // namespace raduls::detail
