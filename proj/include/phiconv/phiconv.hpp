#pragma once

#include "phiconv/catalog.hpp"
#include "phiconv/convexity.hpp"
#include "phiconv/csv.hpp"
#include "phiconv/fuzz.hpp"
#include "phiconv/grid.hpp"
#include "phiconv/modulus.hpp"
#include "phiconv/modulus_props.hpp"
#include "phiconv/numeric_text.hpp"
#include "phiconv/phi_text.hpp"
#include "phiconv/report.hpp"
#include "phiconv/takagi.hpp"
#include "phiconv/transfer.hpp"
