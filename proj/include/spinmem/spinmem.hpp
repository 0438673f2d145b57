#pragma once

#include "spinmem/atomic_spectra.hpp"
#include "spinmem/cavity_model.hpp"
#include "spinmem/core_model.hpp"
#include "spinmem/datasets.hpp"
#include "spinmem/errors.hpp"
#include "spinmem/field_spectra.hpp"
#include "spinmem/grid_oracle.hpp"
#include "spinmem/numerics.hpp"
#include "spinmem/run_config.hpp"
#include "spinmem/transfer_functions.hpp"
