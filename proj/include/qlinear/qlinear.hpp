#ifndef QLINEAR_QLINEAR_HPP
#define QLINEAR_QLINEAR_HPP

#include <qlinear/axioms.hpp>
#include <qlinear/error.hpp>
#include <qlinear/f2series.hpp>
#include <qlinear/finfield.hpp>
#include <qlinear/puiseux.hpp>
#include <qlinear/rational.hpp>
#include <qlinear/text.hpp>

#endif
