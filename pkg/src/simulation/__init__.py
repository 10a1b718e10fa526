"""Monte Carlo verification of the optimal value and policy"""
