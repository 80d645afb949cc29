/*
   Copyright 2026 The darboux-workbench authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace darboux {

// Polynomial vector field: one component per context variable.
struct VectorField {
    Context ctx;
    std::vector<Poly> components;

    std::size_t dimension() const { return ctx ? ctx->size() : 0; }

    // Max total degree over components (at least 1 for a valid field).
    long degree() const {
        long d = 0;
        for (const Poly& p : components) d = std::max(d, p.total_degree());
        return d;
    }
};

inline VectorField make_vector_field(Context ctx, std::vector<Poly> components) {
    if (components.size() != ctx->size())
        throw std::invalid_argument("vector field needs one component per variable");
    bool all_zero = true;
    for (const Poly& p : components) {
        require_same_context(p.ctx(), ctx);
        if (!p.is_zero()) all_zero = false;
    }
    if (all_zero) throw std::invalid_argument("vector field must not be identically zero");
    return VectorField{std::move(ctx), std::move(components)};
}

struct SystemSpec {
    std::string name;
    Context variables;
    std::map<std::string, Rat> parameters;
    VectorField field;
    std::map<std::string, Poly> named_polys;
};

}  // namespace darboux
