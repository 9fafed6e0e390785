from polargrassmann.codes.builder import LinearCode, verify_theorems
from polargrassmann.geometry import QuadraticSpace, enumerate_totally_singular
