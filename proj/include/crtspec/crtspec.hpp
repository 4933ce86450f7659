#pragma once

#include "crtspec/costs.hpp"
#include "crtspec/crt.hpp"
#include "crtspec/error.hpp"
#include "crtspec/field.hpp"
#include "crtspec/linear_complexity.hpp"
#include "crtspec/number_theory.hpp"
#include "crtspec/op_counter.hpp"
#include "crtspec/oracle.hpp"
#include "crtspec/poly2.hpp"
#include "crtspec/report.hpp"
#include "crtspec/sequence.hpp"
#include "crtspec/spectral.hpp"
#include "crtspec/text_format.hpp"
