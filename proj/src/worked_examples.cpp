// SPDX-License-Identifier: Apache-2.0

// Reference exponent tables for the five q = 5 worked examples, transcribed
// verbatim. Examples 1-3 are powers of xi_5, examples 4-5 powers of xi_4.

#include <map>

#include "drcs/error.hpp"
#include "drcs/toolkit.hpp"

namespace drcs::toolkit {

namespace {

using Nested = std::vector<std::vector<int>>;

std::vector<ExponentTable> tables(std::initializer_list<Nested> nested) {
    std::vector<ExponentTable> out;
    for (const auto& n : nested) out.push_back(ExponentTable::from_nested(n));
    return out;
}

std::map<int, WorkedExample> make_catalog() {
    std::map<int, WorkedExample> catalog;

    catalog.emplace(1, WorkedExample{1, Construction::T1, {6, 5, 5, 5}, 5.0,
                                     tables({
                                         {{0, 0, 0, 0, 0}, {2, 3, 2, 0, 1}, {4, 1, 4, 0, 2}, {3, 2, 3, 0, 4}, {1, 4, 1, 0, 3}},
                                         {{0, 0, 0, 0, 0}, {1, 3, 3, 4, 3}, {2, 1, 1, 3, 1}, {4, 2, 2, 1, 2}, {3, 4, 4, 2, 4}},
                                         {{0, 0, 0, 0, 0}, {3, 0, 2, 4, 4}, {1, 0, 4, 3, 3}, {2, 0, 3, 1, 1}, {4, 0, 1, 2, 2}},
                                         {{0, 0, 0, 0, 0}, {2, 1, 2, 0, 3}, {4, 2, 4, 0, 1}, {3, 4, 3, 0, 2}, {1, 3, 1, 0, 4}},
                                         {{0, 0, 0, 0, 0}, {3, 1, 1, 2, 1}, {1, 2, 2, 4, 2}, {2, 4, 4, 3, 4}, {4, 3, 3, 1, 3}},
                                         {{0, 0, 0, 0, 0}, {1, 0, 4, 2, 2}, {2, 0, 3, 4, 4}, {4, 0, 1, 3, 3}, {3, 0, 2, 1, 1}},
                                     })});

    catalog.emplace(2, WorkedExample{2, Construction::T2, {6, 5, 4, 5}, 5.0,
                                     tables({
                                         {{0, 0, 0, 0}, {2, 3, 2, 0}, {4, 1, 4, 0}, {3, 2, 3, 0}, {1, 4, 1, 0}},
                                         {{0, 0, 0, 0}, {1, 3, 3, 4}, {2, 1, 1, 3}, {4, 2, 2, 1}, {3, 4, 4, 2}},
                                         {{0, 0, 0, 0}, {3, 0, 2, 4}, {1, 0, 4, 3}, {2, 0, 3, 1}, {4, 0, 1, 2}},
                                         {{0, 0, 0, 0}, {2, 1, 2, 0}, {4, 2, 4, 0}, {3, 4, 3, 0}, {1, 3, 1, 0}},
                                         {{0, 0, 0, 0}, {3, 1, 1, 2}, {1, 2, 2, 4}, {2, 4, 4, 3}, {4, 3, 3, 1}},
                                         {{0, 0, 0, 0}, {1, 0, 4, 2}, {2, 0, 3, 4}, {4, 0, 1, 3}, {3, 0, 2, 1}},
                                     })});

    catalog.emplace(3, WorkedExample{3, Construction::T3, {4, 5, 6, 5}, 5.0,
                                     tables({
                                         {{0, 0, 0, 0, 0, 0}, {2, 3, 2, 0, 1, 3}, {4, 1, 4, 0, 2, 1}, {3, 2, 3, 0, 4, 2}, {1, 4, 1, 0, 3, 4}},
                                         {{0, 0, 0, 0, 0, 0}, {3, 4, 3, 0, 2, 4}, {1, 3, 1, 0, 4, 3}, {2, 1, 2, 0, 3, 1}, {4, 2, 4, 0, 1, 2}},
                                         {{0, 0, 0, 0, 0, 0}, {4, 1, 4, 0, 3, 1}, {3, 2, 3, 0, 1, 2}, {1, 4, 1, 0, 2, 4}, {2, 3, 2, 0, 4, 3}},
                                         {{0, 0, 0, 0, 0, 0}, {1, 2, 1, 0, 4, 2}, {2, 4, 2, 0, 3, 4}, {4, 3, 4, 0, 1, 3}, {3, 1, 3, 0, 2, 1}},
                                     })});

    catalog.emplace(4, WorkedExample{4, Construction::T4, {4, 4, 5, 4}, 4.0,
                                     tables({
                                         {{0, 0, 0, 0, 0}, {1, 0, 0, 3, 0}, {2, 0, 0, 2, 0}, {3, 0, 0, 1, 0}},
                                         {{0, 0, 0, 0, 0}, {2, 3, 3, 1, 3}, {0, 2, 2, 2, 2}, {2, 1, 1, 3, 1}},
                                         {{0, 0, 0, 0, 0}, {0, 1, 1, 2, 1}, {0, 2, 2, 0, 2}, {0, 3, 3, 2, 3}},
                                         {{0, 0, 0, 0, 0}, {3, 2, 2, 0, 2}, {2, 0, 0, 0, 0}, {1, 2, 2, 0, 2}},
                                     })});

    catalog.emplace(5, WorkedExample{5, Construction::T5, {4, 4, 4, 4}, 4.0,
                                     tables({
                                         {{0, 0, 0, 0}, {1, 0, 0, 3}, {2, 0, 0, 2}, {3, 0, 0, 1}},
                                         {{0, 0, 0, 0}, {2, 3, 3, 1}, {0, 2, 2, 2}, {2, 1, 1, 3}},
                                         {{0, 0, 0, 0}, {0, 1, 1, 2}, {0, 2, 2, 0}, {0, 3, 3, 2}},
                                         {{0, 0, 0, 0}, {3, 2, 2, 0}, {2, 0, 0, 0}, {1, 2, 2, 0}},
                                     })});
    return catalog;
}

}  // namespace

const WorkedExample& worked_example(int id) {
    static const auto catalog = make_catalog();
    const auto it = catalog.find(id);
    if (it == catalog.end()) throw Error(ErrorCode::InvalidArgument, "worked examples are numbered 1 to 5");
    return it->second;
}

}  // namespace drcs::toolkit
