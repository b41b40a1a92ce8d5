#pragma once

// Everything at once. The command-line drivers in cli.hpp pull in the rest.

#include "pgd/cli.hpp"
#include "pgd/front_tracking.hpp"
#include "pgd/io.hpp"
#include "pgd/ode_oracle.hpp"
#include "pgd/rankine_hugoniot.hpp"
#include "pgd/riemann.hpp"
#include "pgd/serialize.hpp"
#include "pgd/viscous.hpp"
#include "pgd/weak_check.hpp"
