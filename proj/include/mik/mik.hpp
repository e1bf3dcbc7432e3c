#pragma once

#include "mik/angle.hpp"
#include "mik/certificate.hpp"
#include "mik/ellipsoid.hpp"
#include "mik/iteration.hpp"
#include "mik/jump.hpp"
#include "mik/morse.hpp"
#include "mik/normal_form.hpp"
#include "mik/oracle.hpp"
#include "mik/real.hpp"
#include "mik/splitting.hpp"
#include "mik/system_io.hpp"
