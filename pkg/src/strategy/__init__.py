"""Trading policies and perturbation transforms"""
