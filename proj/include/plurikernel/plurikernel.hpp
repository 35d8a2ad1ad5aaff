#pragma once

#include "plurikernel/core.hpp"
#include "plurikernel/domain_geometry.hpp"
#include "plurikernel/envelope_bounds.hpp"
#include "plurikernel/expression.hpp"
#include "plurikernel/extrapolation.hpp"
#include "plurikernel/geodesics.hpp"
#include "plurikernel/green_link.hpp"
#include "plurikernel/holomorphic_map.hpp"
#include "plurikernel/julia_jwc.hpp"
#include "plurikernel/model_kernels.hpp"
#include "plurikernel/parallel.hpp"
#include "plurikernel/reproducing.hpp"
