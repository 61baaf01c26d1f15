#pragma once

#include "domideal/monomial.hpp"
#include "domideal/format.hpp"
#include "domideal/dominance.hpp"
#include "domideal/lcm_enumeration.hpp"
#include "domideal/counting_formulas.hpp"
#include "domideal/prime_structure.hpp"
#include "domideal/random_models.hpp"
#include "domideal/json_io.hpp"
#include "domideal/experiment.hpp"
