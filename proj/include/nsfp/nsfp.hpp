#ifndef NSFP_NSFP_HPP
#define NSFP_NSFP_HPP

#include "nsfp/grid.hpp"
#include "nsfp/fft.hpp"
#include "nsfp/parallel.hpp"
#include "nsfp/spectral2d.hpp"
#include "nsfp/mollifier.hpp"
#include "nsfp/littlewood_paley.hpp"
#include "nsfp/circle.hpp"
#include "nsfp/distribution.hpp"
#include "nsfp/model.hpp"
#include "nsfp/initial_data.hpp"
#include "nsfp/integrator.hpp"
#include "nsfp/diagnostics.hpp"
#include "nsfp/simulation.hpp"
#include "nsfp/besov_lab.hpp"
#include "nsfp/io.hpp"
#include "nsfp/commands.hpp"

#endif  // NSFP_NSFP_HPP
