"""
Numerical core: one subpackage per concern, lowest level first.

fourier -> schedule -> models -> guidance -> ddim -> startpoint -> metrics -> pipeline
"""
