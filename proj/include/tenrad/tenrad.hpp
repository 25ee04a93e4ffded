#pragma once

#include "tenrad/bounds.hpp"
#include "tenrad/complex_matrix.hpp"
#include "tenrad/error.hpp"
#include "tenrad/generators.hpp"
#include "tenrad/hermitian_eig.hpp"
#include "tenrad/matrix_io.hpp"
#include "tenrad/numrange.hpp"
#include "tenrad/scalar_distance.hpp"
#include "tenrad/spectral.hpp"
#include "tenrad/support.hpp"
#include "tenrad/verify.hpp"
