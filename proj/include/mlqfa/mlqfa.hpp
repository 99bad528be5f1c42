#pragma once

#include "mlqfa/scalar.hpp"
#include "mlqfa/matrix.hpp"
#include "mlqfa/span_basis.hpp"
#include "mlqfa/alphabet.hpp"
#include "mlqfa/dfa.hpp"
#include "mlqfa/qfa.hpp"
#include "mlqfa/equivalence.hpp"
#include "mlqfa/dfa_analysis.hpp"
#include "mlqfa/gallery.hpp"
#include "mlqfa/oracle.hpp"
#include "mlqfa/io.hpp"
