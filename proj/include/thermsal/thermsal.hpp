#pragma once

#include "thermsal/curves.hpp"
#include "thermsal/dataset.hpp"
#include "thermsal/detmetrics.hpp"
#include "thermsal/dft.hpp"
#include "thermsal/errors.hpp"
#include "thermsal/fusion.hpp"
#include "thermsal/image.hpp"
#include "thermsal/image_io.hpp"
#include "thermsal/integral.hpp"
#include "thermsal/parallel.hpp"
#include "thermsal/resample.hpp"
#include "thermsal/saliency.hpp"
#include "thermsal/salmetrics.hpp"
