# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 MED-MAGMA contributors.
#
# MED-MAGMA is free software; you can redistribute it and/or modify
# it under the terms of the MIT License; see LICENSE file for more details.

"""Multi-axis graph learning under multiplicative noise."""

__version__ = "1.0.0a1"

__all__ = ("__version__",)
