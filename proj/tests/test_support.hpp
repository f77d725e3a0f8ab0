#pragma once

#include "doctest.h"
#include "g2cm/field.hpp"

namespace doctest {
template <>
struct StringMaker<g2cm::FieldElement> {
    static String convert(const g2cm::FieldElement& e) { return e.to_string().c_str(); }
};
}  // namespace doctest
