"""
Multiprocessing utilities, used by the partitioned weight scans.

"""
import functools
import multiprocessing as mp
from multiprocessing import sharedctypes
from operator import mul

import numpy as np


_CTYPES = {
    "uint8": ("B", np.uint8),
    "int": ("q", np.int64),
}


class SharedArray:
    """
    Small wrapper for a multiprocessing shared-memory array that will be used as the
    in-memory storage for a numpy array. This allows a numpy array to be easily shared
    between processes.

    The weight scans fill the array once in the parent and only read it in the workers,
    so nobody needs to take the lock then. If you write to a shared array while
    other processes might be reading it, enclose the numpy operations in:

       with arr.lock:
           arr.np[0] = 1

    """
    def __init__(self, array, shape, lock, dtype):
        self.array = array
        self.shape = shape
        np_array = np.frombuffer(self.array, dtype=dtype)
        np_array = np_array.reshape(self.shape)
        self.np = np_array
        self.lock = lock

    @staticmethod
    def create(shape, dtype="uint8"):
        try:
            ctype, np_type = _CTYPES[dtype]
        except KeyError:
            raise ValueError("unknown type '{}'".format(dtype))

        lock = mp.Lock()
        # Allocate shared memory to sit behind the numpy array
        if type(shape) is int:
            size = shape
        else:
            size = functools.reduce(mul, shape, 1)
        array = sharedctypes.RawArray(ctype, size)
        return SharedArray(array, shape, lock, np_type)

    @staticmethod
    def from_array(arr):
        """ Copy a numpy array into a new shared array """
        dtype = "uint8" if arr.dtype == np.uint8 else "int"
        shared = SharedArray.create(arr.shape, dtype)
        shared.np[...] = arr
        return shared

    def __getstate__(self):
        """
        Arrays get pickled to be sent between processes. We ensure that the same
        shared array is used on the other side.

        """
        return self.array, self.shape, self.lock, self.np.dtype

    def __setstate__(self, state):
        self.__init__(*state)
