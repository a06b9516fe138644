"""Stand-in framework with the conventional train.py / test.py surface.

Used when GAN_FRAMEWORK_DIR is unset so adapter tests can run a real
train + infer cycle on CPU in seconds. The model is a deliberately tiny
convolutional net, not a reimplementation of any real generator;
a real framework checkout honoring the same options is a drop-in
replacement.
"""
