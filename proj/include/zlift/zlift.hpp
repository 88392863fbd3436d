#pragma once

#include "zlift/apfree.hpp"
#include "zlift/basegraphs.hpp"
#include "zlift/bitvec.hpp"
#include "zlift/core.hpp"
#include "zlift/field.hpp"
#include "zlift/lift.hpp"
#include "zlift/pipeline.hpp"
#include "zlift/rational.hpp"
#include "zlift/rsz.hpp"
#include "zlift/verifier.hpp"
