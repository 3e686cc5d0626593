"""fquant - Functional quantization of Brownian motion, rough-path lifts and quantized SDEs."""

__version__ = "0.1.0"
