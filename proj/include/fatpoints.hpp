#pragma once

#include "fatpoints/errors.hpp"
#include "fatpoints/field.hpp"
#include "fatpoints/io.hpp"
#include "fatpoints/monomials.hpp"
#include "fatpoints/nagata.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/qseries.hpp"
#include "fatpoints/scan.hpp"
#include "fatpoints/sl2.hpp"
