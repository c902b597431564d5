#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys

from StochasticTester import main

# Prefer the `stochastic-tester` script installed by poetry; this file runs the same
# entry point from a source checkout.

if __name__ == "__main__":
    sys.exit(main())
