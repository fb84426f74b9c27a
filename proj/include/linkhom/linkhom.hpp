#pragma once

#include "linkhom/error.hpp"
#include "linkhom/field.hpp"
#include "linkhom/poly.hpp"
#include "linkhom/frobenius.hpp"
#include "linkhom/diagram.hpp"
#include "linkhom/diagram_io.hpp"
#include "linkhom/resolution.hpp"
#include "linkhom/seifert.hpp"
#include "linkhom/complex.hpp"
#include "linkhom/sparse.hpp"
#include "linkhom/homology.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/random.hpp"
#include "linkhom/verify.hpp"
#include "linkhom/report.hpp"
#include "linkhom/cli.hpp"
